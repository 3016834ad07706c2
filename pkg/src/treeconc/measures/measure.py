"""finitely supported measures on trees and on euclidean space
"""
from typing import List, Optional, Sequence

import numpy
from scipy.spatial import distance as spdist

from ..rtree import Tree, TreePoint
from ..typing import FloatArray, Position


class AtomicMeasure(object):
    """AtomicMeasure Finite list of atoms with positive masses.

    Subclasses say where the atoms live by implementing
    `distance_matrix`, `distances_from` and `_rebuild`.

    Args:
        masses (Sequence[float]): positive, finite atom masses

    Raises:
        ValueError: no atoms, or a non-positive/non-finite mass
    """

    def __init__(self, masses):
        masses = numpy.asarray(masses, dtype=float).ravel()
        if masses.size == 0:
            raise ValueError("measure must have at least one atom")
        if not numpy.all(numpy.isfinite(masses)) or numpy.any(masses <= 0):
            raise ValueError("masses must be positive and finite")
        self.masses = masses
        self._D: Optional[FloatArray] = None

    @property
    def m(self) -> float:
        return float(self.masses.sum())

    def __len__(self) -> int:
        return len(self.masses)

    def distance_matrix(self) -> FloatArray:
        if self._D is None:
            self._D = self._compute_distance_matrix()
        return self._D

    def _compute_distance_matrix(self) -> FloatArray:
        raise NotImplementedError()

    def distances_from(self, c) -> FloatArray:
        raise NotImplementedError()

    def _rebuild(self, idx: Sequence[int], masses: FloatArray):
        raise NotImplementedError()

    def restrict(self, idx: Sequence[int],
                 masses: Optional[FloatArray] = None):
        """restrict Sub-measure on the atoms `idx` (optionally re-weighted).
        """
        idx = numpy.asarray(idx, dtype=int)
        if masses is None:
            masses = self.masses[idx]
        return self._rebuild(idx, numpy.asarray(masses, dtype=float))

    def diameter(self) -> float:
        return float(self.distance_matrix().max()) if len(self) > 1 else 0.0


class TreeMeasure(AtomicMeasure):
    """TreeMeasure Finitely supported measure on a `Tree`.

    Args:
        tree (Tree): the tree the atoms live on
        points (Sequence[TreePoint]): atom locations, pairwise distinct
        masses (Sequence[float]): atom masses

    Raises:
        ValueError: invalid point, repeated point, or bad masses
    """

    def __init__(self, tree: Tree, points: Sequence[TreePoint], masses):
        super().__init__(masses)
        self.tree = tree
        self.points: List[TreePoint] = [tree.validate_point(p)
                                        for p in points]
        if len(self.points) != len(self.masses):
            raise ValueError("need one mass per atom")
        if len(set(self.points)) != len(self.points):
            raise ValueError("atom points must be pairwise distinct")

    @classmethod
    def from_points(cls, tree: Tree, points: Sequence[TreePoint],
                    masses) -> "TreeMeasure":
        """from_points Build a measure, adding masses of repeated points."""
        merged = dict()
        for p, w in zip(points, numpy.asarray(masses, dtype=float).ravel()):
            p = tree.validate_point(p)
            merged[p] = merged.get(p, 0.0) + float(w)
        return cls(tree, list(merged.keys()), list(merged.values()))

    @classmethod
    def from_json(cls, tree: Tree, obj) -> "TreeMeasure":
        if not isinstance(obj, dict) or "atoms" not in obj:
            raise ValueError("measure json needs 'atoms'")
        pts = [tree.parse_point(a[0]) for a in obj["atoms"]]
        return cls(tree, pts, [float(a[1]) for a in obj["atoms"]])

    def to_json(self) -> dict:
        return {
            "atoms": [[self.tree.point_json(p), float(w)]
                      for p, w in zip(self.points, self.masses)]
        }

    def _compute_distance_matrix(self) -> FloatArray:
        return self.tree.distance_matrix(self.points)

    def distances_from(self, c: TreePoint) -> FloatArray:
        return self.tree.distance_matrix([c], self.points)[0]

    def _rebuild(self, idx, masses) -> "TreeMeasure":
        return TreeMeasure(self.tree, [self.points[i] for i in idx], masses)

    def as_space(self):
        """as_space The atoms as a finite mm-space (same order)."""
        from .space import MMSpace
        return MMSpace(self.distance_matrix(), self.masses,
                       check_triangle=False)

    def __repr__(self) -> str:
        return "TreeMeasure(atoms={:d}, m={:.6g})".format(len(self), self.m)


class LineMeasure(AtomicMeasure):
    """LineMeasure Finitely supported measure on R^d (d >= 1).

    Args:
        positions (array-like): `k` scalars or a `k x d` array
        masses (Sequence[float]): atom masses

    Raises:
        ValueError: shape mismatch, repeated position or bad masses
    """

    def __init__(self, positions, masses):
        super().__init__(masses)
        pos = numpy.asarray(positions, dtype=float)
        if pos.ndim == 1:
            pos = pos[:, None]
        if pos.ndim != 2 or pos.shape[0] != len(self.masses):
            raise ValueError("need one position per atom")
        if not numpy.all(numpy.isfinite(pos)):
            raise ValueError("positions must be finite")
        if len(numpy.unique(pos, axis=0)) != len(pos):
            raise ValueError("atom positions must be pairwise distinct")
        self.positions = pos

    @classmethod
    def from_points(cls, positions, masses) -> "LineMeasure":
        """from_points Build a measure, adding masses of repeated points."""
        pos = numpy.asarray(positions, dtype=float)
        if pos.ndim == 1:
            pos = pos[:, None]
        uniq, inv = numpy.unique(pos, axis=0, return_inverse=True)
        w = numpy.bincount(inv.ravel(), weights=numpy.asarray(
            masses, dtype=float).ravel(), minlength=len(uniq))
        return cls(uniq, w)

    @classmethod
    def from_json(cls, obj) -> "LineMeasure":
        if not isinstance(obj, dict) or "atoms" not in obj:
            raise ValueError("measure json needs 'atoms'")
        pos = [numpy.atleast_1d(numpy.asarray(a[0], dtype=float))
               for a in obj["atoms"]]
        return cls(numpy.vstack(pos), [float(a[1]) for a in obj["atoms"]])

    def to_json(self) -> dict:
        if self.dim == 1:
            pos = [float(x) for x in self.positions[:, 0]]
        else:
            pos = self.positions.tolist()
        return {"atoms": [[x, float(w)] for x, w in zip(pos, self.masses)]}

    @property
    def dim(self) -> int:
        return int(self.positions.shape[1])

    def _compute_distance_matrix(self) -> FloatArray:
        if self.dim == 1:
            x = self.positions[:, 0]
            return numpy.abs(x[:, None] - x[None, :])
        return spdist.cdist(self.positions, self.positions)

    def distances_from(self, c: Position) -> FloatArray:
        c = numpy.atleast_1d(numpy.asarray(c, dtype=float))
        if c.shape != (self.dim,):
            raise ValueError("center must have dimension {:d}".format(
                self.dim))
        return numpy.sqrt(((self.positions - c[None, :]) ** 2).sum(axis=1))

    def _rebuild(self, idx, masses) -> "LineMeasure":
        return LineMeasure(self.positions[idx], masses)

    def __repr__(self) -> str:
        return "LineMeasure(atoms={:d}, dim={:d}, m={:.6g})".format(
            len(self), self.dim, self.m)
