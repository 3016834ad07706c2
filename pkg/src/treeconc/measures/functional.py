"""scalar functionals of finitely supported measures

Partial diameter, separation distance, central radius and the
Lp-variation of an atomic measure, together with push-forwards along
validated 1-Lipschitz maps and epsilon-net coarsening. Every routine works
on any `AtomicMeasure` (tree measures, euclidean measures and finite
mm-spaces); trees and the real line get dedicated exact algorithms, all
other supports fall back to subset enumeration or a mixed integer program.
"""
import warnings
from typing import Union

import numpy

from .._util import first_reaching, mass_slack, reaches
from ..typing import FloatArray
from ._subset import (
    exhaustive_partial_diameter, exhaustive_separation, greedy_separation,
    milp_partial_diameter, milp_separation
)
from ._separation import disjoint_possible, line_separation, tree_separation
from .measure import AtomicMeasure, LineMeasure, TreeMeasure
from .space import LipschitzFunction, LipschitzTreeMap, MMSpace

# above this many atoms the exact routines switch from enumeration to milp
EXACT_SUBSET_LIMIT = 14


def _check_kappa(kappa: float, m: float, name: str = "kappa"):
    if not numpy.isfinite(kappa):
        raise ValueError("{} must be finite".format(name))
    if kappa < -mass_slack(m) or kappa > m + mass_slack(m):
        raise ValueError("{} must lie in [0, m] (m = {:.6g})".format(name, m))


def vp(nu: AtomicMeasure, p: float = 1.0) -> float:
    """vp Lp-variation `(sum_ij w_i w_j d_ij^p)^(1/p)` of a measure.

    Args:
        nu (AtomicMeasure): the measure, distances are those of its
            ambient space
        p (float, optional): exponent. Defaults to 1.

    Raises:
        ValueError: `p <= 0`

    Returns:
        float
    """
    if p <= 0 or not numpy.isfinite(p):
        raise ValueError("exponent p must be positive and finite")
    if p < 1:
        warnings.warn("vp with p < 1 is not convex in the measure")
    if len(nu) == 1:
        return 0.0
    w = nu.masses
    total = float(w @ (nu.distance_matrix() ** p) @ w)
    return max(total, 0.0) ** (1.0 / p)


def window_diameter(x: FloatArray, w: FloatArray, target: float,
                    m: float) -> float:
    """window_diameter Partial diameter of atoms on the real line.

    Repeated positions are allowed, so this also serves values of a
    function before the push-forward merges them.

    Args:
        x (FloatArray): positions
        w (FloatArray): masses
        target (float): mass the window has to carry
        m (float): total mass (slack scale)

    Returns:
        float: length of the shortest closed window reaching `target`
    """
    order = numpy.argsort(x, kind="stable")
    xs = x[order]
    cum = numpy.concatenate([[0.0], numpy.cumsum(w[order])])
    need = cum[:-1] + target - mass_slack(m)
    end = numpy.searchsorted(cum, need, side="left")
    ok = end <= len(xs)
    if not ok.any():
        return 0.0
    start = numpy.flatnonzero(ok)
    last = numpy.maximum(end[ok] - 1, start)
    return float(max((xs[last] - xs[start]).min(), 0.0))


def _tree_partial_diameter(nu: TreeMeasure, target: float) -> float:
    # a set of diameter D in a tree lies in the ball of radius D/2 about
    # the midpoint of a diametral pair
    D = nu.distance_matrix()
    w = nu.masses
    m = nu.m
    tol = nu.tree.tol * max(1.0, float(D.max()))
    best = numpy.inf
    for x in range(len(w)):
        Dx = D[x]
        # s[y, z]: distance from x to the foot of z on the geodesic [x, y]
        s = (Dx[None, :] + Dx[:, None] - D) / 2
        dist = Dx[None, :] - s + numpy.abs(s - Dx[:, None] / 2)
        inside = dist <= Dx[:, None] / 2 + tol
        ok = reaches(inside @ w, target, m)
        if ok.any():
            best = min(best, float(Dx[ok].min()))
    return best


def partial_diameter(nu: AtomicMeasure, kappa: float,
                     exact_limit: int = EXACT_SUBSET_LIMIT) -> float:
    """partial_diameter Smallest diameter of a part of the support carrying
    mass at least `m - kappa`.

    Args:
        nu (AtomicMeasure): the measure
        kappa (float): mass allowed to be dropped, in [0, m]
        exact_limit (int, optional): subset enumeration up to this many
            atoms for supports without a dedicated algorithm. Defaults to 14.

    Raises:
        ValueError: `kappa` outside [0, m]

    Returns:
        float: 0 when `kappa >= m` (the empty set is admissible)
    """
    m = nu.m
    _check_kappa(kappa, m)
    if reaches(kappa, m, m) or len(nu) == 1:
        return 0.0
    target = m - kappa
    if isinstance(nu, TreeMeasure):
        return _tree_partial_diameter(nu, target)
    if isinstance(nu, LineMeasure) and nu.dim == 1:
        return window_diameter(nu.positions[:, 0], nu.masses, target, m)
    D = nu.distance_matrix()
    if len(nu) <= exact_limit:
        return exhaustive_partial_diameter(D, nu.masses, target, m)
    return milp_partial_diameter(D, nu.masses, target, m)


def separation(X: AtomicMeasure, k1: float, k2: float,
               exact_limit: int = EXACT_SUBSET_LIMIT) -> float:
    """separation Separation distance `Sep(X; k1, k2)`.

    Largest `d(A, B)` over parts of the support with masses at least `k1`
    and `k2`. Spaces that carry their own exact routine in
    `separation_fn` (hypercubes, trees viewed as spaces) use it; tree
    measures and measures on the real line have exact dynamic programs;
    everything else is enumerated or solved as a mixed integer program.

    Args:
        X (AtomicMeasure): mm-space or measure
        k1 (float): mass required of the first set
        k2 (float): mass required of the second set
        exact_limit (int, optional): subset enumeration up to this many
            atoms, milp above. Defaults to 14.

    Raises:
        ValueError: negative mass level

    Returns:
        float: 0 when no admissible pair exists
    """
    if k1 < 0 or k2 < 0:
        raise ValueError("mass levels must be non-negative")
    m = X.m
    if not reaches(m, k1, m) or not reaches(m, k2, m):
        return 0.0
    fn = getattr(X, "separation_fn", None)
    if fn is not None:
        return float(fn(k1, k2))
    if len(X) == 1 or not disjoint_possible(k1, k2, m):
        return 0.0
    D = X.distance_matrix()
    if isinstance(X, LineMeasure) and X.dim == 1:
        return line_separation(X.positions[:, 0], X.masses, k1, k2, m)
    if isinstance(X, TreeMeasure):
        lower = greedy_separation(D, X.masses, k1, k2, m)
        return tree_separation(X.tree, X.points, X.masses, D, k1, k2, m,
                               lower)
    if len(X) <= exact_limit:
        return exhaustive_separation(D, X.masses, k1, k2, m)
    return milp_separation(D, X.masses, k1, k2, m)


def separation_lower(X: AtomicMeasure, k1: float, k2: float) -> float:
    """separation_lower Cheap lower bound on `separation` from balls grown
    around every atom."""
    if k1 < 0 or k2 < 0:
        raise ValueError("mass levels must be non-negative")
    if len(X) == 1:
        return 0.0
    return greedy_separation(X.distance_matrix(), X.masses, k1, k2, X.m)


def central_radius(nu: AtomicMeasure, kappa: float, c) -> float:
    """central_radius Smallest radius of a closed ball about `c` carrying
    mass at least `m - kappa`.

    Args:
        nu (AtomicMeasure): the measure
        kappa (float): mass allowed outside the ball
        c: center, a point of the ambient space of `nu` (a `TreePoint`,
            a position, or an atom index for mm-spaces)

    Raises:
        ValueError: negative `kappa`

    Returns:
        float: 0 when `kappa >= m`
    """
    m = nu.m
    if kappa < -mass_slack(m):
        raise ValueError("kappa must be non-negative")
    if reaches(kappa, m, m):
        return 0.0
    d = nu.distances_from(c)
    order = numpy.argsort(d, kind="stable")
    return first_reaching(d[order], nu.masses[order], m - kappa, m)


def ball_mass(nu: AtomicMeasure, c, r: float, tol: float = 1e-12) -> float:
    """ball_mass Mass of the closed ball of radius `r` about `c`."""
    d = nu.distances_from(c)
    return float(nu.masses[d <= r + tol * max(1.0, r)].sum())


def pushforward(X: MMSpace, f: Union[LipschitzFunction, LipschitzTreeMap]
                ) -> Union[LineMeasure, TreeMeasure]:
    """pushforward Image measure of `X` under a validated 1-Lipschitz map.

    Atoms landing on the same image point are merged, so the total mass is
    carried over exactly.

    Args:
        X (MMSpace): domain
        f (LipschitzFunction or LipschitzTreeMap): map validated against `X`

    Raises:
        ValueError: `f` is not a validated map of `X`

    Returns:
        LineMeasure or TreeMeasure
    """
    if isinstance(f, LipschitzFunction):
        if f.base is not X:
            raise ValueError("function was validated against another space")
        return LineMeasure.from_points(f.values, X.masses)
    if isinstance(f, LipschitzTreeMap):
        if f.base is not X:
            raise ValueError("map was validated against another space")
        return TreeMeasure.from_points(f.target, f.images, X.masses)
    raise ValueError("pushforward needs a LipschitzFunction or a "
                     "LipschitzTreeMap, got {}".format(type(f).__name__))


def coarsen(nu: AtomicMeasure, eps: float) -> AtomicMeasure:
    """coarsen Move all mass onto an `eps`-net of the support.

    The net is built greedily in atom order, every atom then sends its
    mass to the nearest net point (which is within `eps`).

    Args:
        nu (AtomicMeasure): the measure
        eps (float): net radius, positive

    Raises:
        ValueError: `eps <= 0`

    Returns:
        AtomicMeasure: same type as `nu`, supported on the net
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    D = nu.distance_matrix()
    k = len(nu)
    centers = []
    covered = numpy.zeros(k, dtype=bool)
    for i in range(k):
        if covered[i]:
            continue
        centers.append(i)
        covered |= D[i] <= eps
    centers = numpy.asarray(centers, dtype=int)
    owner = numpy.argmin(D[:, centers], axis=1)
    masses = numpy.bincount(owner, weights=nu.masses,
                            minlength=len(centers))
    return nu.restrict(centers, masses)
