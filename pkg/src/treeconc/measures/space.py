"""finite metric measure spaces and 1-Lipschitz maps out of them
"""
from typing import Callable, List, Optional, Sequence

import numpy

from ..rtree import Tree, TreePoint
from ..typing import FloatArray
from .measure import AtomicMeasure

# full triangle inequality validation is cubic, skip it above this size
TRIANGLE_CHECK_LIMIT = 400


class MMSpace(AtomicMeasure):
    """MMSpace Finite metric measure space (distance matrix + point masses).

    Args:
        dist (array-like): `n x n` distance matrix
        mass (Sequence[float]): positive point masses
        ids (Sequence, optional): point labels. Defaults to 0..n-1.
        tol (float, optional): tolerance for the metric checks.
            Defaults to 1e-12.
        check_triangle (bool, optional): validate the triangle inequality;
            None checks it only for small spaces. Defaults to None.

    Raises:
        ValueError: `dist` is not a metric or masses are invalid
    """

    def __init__(self, dist, mass, ids: Optional[Sequence] = None,
                 tol: float = 1e-12, check_triangle: Optional[bool] = None):
        super().__init__(mass)
        D = numpy.asarray(dist, dtype=float)
        n = len(self.masses)
        if D.shape != (n, n):
            raise ValueError("distance matrix must be {0:d}x{0:d}".format(n))
        if not numpy.all(numpy.isfinite(D)):
            raise ValueError("distances must be finite")
        scale = tol * max(1.0, float(numpy.abs(D).max()) if n else 1.0)
        if numpy.any(numpy.abs(numpy.diag(D)) > scale):
            raise ValueError("distance matrix must have a zero diagonal")
        if numpy.any(numpy.abs(D - D.T) > scale):
            raise ValueError("distance matrix must be symmetric")
        off = ~numpy.eye(n, dtype=bool)
        if numpy.any(D[off] <= 0):
            raise ValueError("distinct points must have positive distance")
        if check_triangle is None:
            check_triangle = n <= TRIANGLE_CHECK_LIMIT
        if check_triangle:
            for k in range(n):
                if numpy.any(D > D[:, k, None] + D[None, k, :] + scale):
                    raise ValueError("distance matrix violates the "
                                     "triangle inequality")
        D = (D + D.T) / 2
        numpy.fill_diagonal(D, 0.0)
        self.dist = D
        self._D = D
        self.ids = list(range(n)) if ids is None else list(ids)
        if len(self.ids) != n:
            raise ValueError("need one id per point")
        # optional exact separation routine for structured spaces,
        # signature (k1, k2) -> float
        self.separation_fn: Optional[Callable[[float, float], float]] = None

    @property
    def n(self) -> int:
        return len(self.masses)

    def _compute_distance_matrix(self) -> FloatArray:
        return self.dist

    def distances_from(self, c: int) -> FloatArray:
        return self.dist[int(c)]

    def _rebuild(self, idx, masses) -> "MMSpace":
        D = self.dist[numpy.ix_(idx, idx)]
        return MMSpace(D, masses, ids=[self.ids[i] for i in idx],
                       check_triangle=False)

    @classmethod
    def from_json(cls, obj) -> "MMSpace":
        if not isinstance(obj, dict) or "dist" not in obj \
                or "mass" not in obj:
            raise ValueError("mm-space json needs 'dist' and 'mass'")
        return cls(obj["dist"], obj["mass"], ids=obj.get("ids"))

    def to_json(self) -> dict:
        return {"dist": self.dist, "mass": self.masses,
                "ids": list(self.ids)}

    def __repr__(self) -> str:
        return "MMSpace(n={:d}, m={:.6g}, diam={:.6g})".format(
            self.n, self.m, self.diameter())


def lipschitz_violation(D: FloatArray, values: FloatArray) -> float:
    """lipschitz_violation Largest `|f_i - f_j| - d_ij` (<= 0 when
    1-Lipschitz)."""
    v = numpy.asarray(values, dtype=float)
    if len(v) < 2:
        return 0.0
    gap = numpy.abs(v[:, None] - v[None, :]) - D
    numpy.fill_diagonal(gap, -numpy.inf)
    return float(gap.max())


class LipschitzFunction(object):
    """LipschitzFunction Validated 1-Lipschitz function X -> R.

    Args:
        base (MMSpace): domain
        values (Sequence[float]): one value per point
        tol (float, optional): allowed violation. Defaults to 1e-9.

    Raises:
        ValueError: wrong length or the function is not 1-Lipschitz
    """

    def __init__(self, base: MMSpace, values, tol: float = 1e-9):
        v = numpy.asarray(values, dtype=float).ravel()
        if v.shape != (base.n,):
            raise ValueError("need one value per point of the space")
        if not numpy.all(numpy.isfinite(v)):
            raise ValueError("function values must be finite")
        viol = lipschitz_violation(base.dist, v)
        if viol > tol:
            raise ValueError(
                "function is not 1-Lipschitz (violation {:.3g})".format(viol))
        self.base = base
        self.values = v

    def to_json(self) -> dict:
        return {"values": self.values}


class LipschitzTreeMap(object):
    """LipschitzTreeMap Validated 1-Lipschitz map X -> T.

    Args:
        base (MMSpace): domain
        target (Tree): screen
        images (Sequence[TreePoint]): image of every point
        tol (float, optional): allowed violation. Defaults to 1e-9.

    Raises:
        ValueError: wrong length, invalid point, or not 1-Lipschitz
    """

    def __init__(self, base: MMSpace, target: Tree,
                 images: Sequence[TreePoint], tol: float = 1e-9):
        images = [target.validate_point(p) for p in images]
        if len(images) != base.n:
            raise ValueError("need one image per point of the space")
        DT = target.distance_matrix(images)
        gap = DT - base.dist
        numpy.fill_diagonal(gap, -numpy.inf)
        viol = float(gap.max()) if base.n > 1 else 0.0
        if viol > tol:
            raise ValueError(
                "map is not 1-Lipschitz (violation {:.3g})".format(viol))
        self.base = base
        self.target = target
        self.images: List[TreePoint] = images

    def to_json(self) -> dict:
        return {"images": [self.target.point_json(p) for p in self.images]}
