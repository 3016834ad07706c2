"""exact subset searches over the support of an atomic measure

Small supports are enumerated with bitmask tables, larger ones go to a
mixed integer program (`scipy.optimize.milp`, HiGHS backend).
"""
from typing import Tuple

import numpy
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .._util import mass_slack, reaches
from ..typing import FloatArray


def _bits(k: int) -> numpy.ndarray:
    masks = numpy.arange(1 << k)
    return ((masks[:, None] >> numpy.arange(k)[None, :]) & 1).astype(bool)


def subset_masses(masses: FloatArray) -> FloatArray:
    k = len(masses)
    M = numpy.zeros(1 << k)
    for i in range(k):
        M[1 << i:1 << (i + 1)] = M[:1 << i] + masses[i]
    return M


def subset_reach(D: FloatArray, fill: float, op) -> FloatArray:
    """subset_reach Table `R[A, x] = op_{a in A} D[a, x]` over all subsets.

    Row 0 (the empty set) is `fill`.
    """
    k = D.shape[0]
    R = numpy.full((1 << k, k), fill, dtype=float)
    for i in range(k):
        R[1 << i:1 << (i + 1)] = op(R[:1 << i], D[i][None, :])
    return R


def exhaustive_partial_diameter(D: FloatArray, masses: FloatArray,
                                target: float, m: float) -> float:
    k = len(masses)
    M = subset_masses(masses)
    H = subset_reach(D, -numpy.inf, numpy.maximum)
    diam = numpy.where(_bits(k), H, -numpy.inf).max(axis=1)
    ok = reaches(M, target, m)
    ok[0] = False
    return float(max(diam[ok].min(), 0.0))


def exhaustive_separation(D: FloatArray, masses: FloatArray, k1: float,
                          k2: float, m: float) -> float:
    M = subset_masses(masses)
    ok = reaches(M, k1, m)
    ok[0] = False
    if not ok.any():
        return 0.0
    G = subset_reach(D, numpy.inf, numpy.minimum)[ok]
    # B is the far end of d(., A), the farthest points first
    order = numpy.argsort(-G, axis=1, kind="stable")
    Gs = numpy.take_along_axis(G, order, axis=1)
    cum = numpy.cumsum(masses[order], axis=1)
    hit = reaches(cum, k2, m)
    has = hit.any(axis=1)
    if not has.any():
        return 0.0
    first = numpy.argmax(hit, axis=1)
    vals = Gs[numpy.arange(len(Gs)), first]
    return float(max(vals[has].max(), 0.0))


def _pairs(mask: numpy.ndarray) -> Tuple[numpy.ndarray, numpy.ndarray]:
    i, j = numpy.nonzero(mask)
    return i, j


def milp_max_mass_independent(masses: FloatArray,
                              conflict: numpy.ndarray) -> float:
    """milp_max_mass_independent Heaviest subset without conflicting pairs.

    Args:
        masses (FloatArray): atom masses
        conflict (numpy.ndarray): boolean `k x k`, True where two atoms may
            not both be chosen (only the upper triangle is read)

    Returns:
        float: mass of the heaviest admissible subset
    """
    k = len(masses)
    i, j = _pairs(numpy.triu(conflict, 1))
    constraints = []
    if len(i):
        rows = numpy.repeat(numpy.arange(len(i)), 2)
        cols = numpy.stack([i, j], axis=1).ravel()
        A = sparse.coo_matrix((numpy.ones(len(cols)), (rows, cols)),
                              shape=(len(i), k))
        constraints.append(LinearConstraint(A, -numpy.inf, 1))
    res = milp(-masses, integrality=numpy.ones(k), bounds=Bounds(0, 1),
               constraints=constraints)
    if res.status != 0 or res.x is None:
        return 0.0
    chosen = res.x > 0.5
    return float(masses[chosen].sum())


def milp_separation_feasible(D: FloatArray, masses: FloatArray, k1: float,
                             k2: float, t: float, m: float) -> bool:
    """milp_separation_feasible Do sets A, B with masses >= k1, k2 and
    d(A, B) >= t exist?
    """
    k = len(masses)
    tol = 1e-12 * max(1.0, t)
    i, j = _pairs(D < t - tol)
    rows = numpy.repeat(numpy.arange(len(i)), 2)
    # variables: a_0..a_{k-1}, b_0..b_{k-1}
    cols = numpy.stack([i, k + j], axis=1).ravel()
    A_conf = sparse.coo_matrix((numpy.ones(len(cols)), (rows, cols)),
                               shape=(len(i), 2 * k))
    A_mass = numpy.zeros((2, 2 * k))
    A_mass[0, :k] = masses
    A_mass[1, :k] = 1.0
    A_nonempty_b = numpy.zeros((1, 2 * k))
    A_nonempty_b[0, k:] = 1.0
    slack = mass_slack(m)
    constraints = [
        LinearConstraint(A_mass, [k1 - slack, 1], [numpy.inf, numpy.inf]),
        LinearConstraint(A_nonempty_b, 1, numpy.inf),
    ]
    if len(i):
        constraints.append(LinearConstraint(A_conf, -numpy.inf, 1))
    c = numpy.concatenate([numpy.zeros(k), -masses])
    res = milp(c, integrality=numpy.ones(2 * k), bounds=Bounds(0, 1),
               constraints=constraints)
    if res.status != 0 or res.x is None:
        return False
    b = res.x[k:] > 0.5
    return bool(reaches(masses[b].sum(), k2, m))


def milp_partial_diameter(D: FloatArray, masses: FloatArray, target: float,
                          m: float) -> float:
    cands = numpy.unique(D[numpy.triu_indices(len(masses), 1)])
    cands = numpy.concatenate([[0.0], cands])
    lo, hi = 0, len(cands) - 1
    # the whole support always qualifies, so cands[hi] is feasible
    while lo < hi:
        mid = (lo + hi) // 2
        tol = 1e-12 * max(1.0, cands[mid])
        best = milp_max_mass_independent(masses, D > cands[mid] + tol)
        if reaches(best, target, m):
            hi = mid
        else:
            lo = mid + 1
    return float(cands[lo])


def milp_separation(D: FloatArray, masses: FloatArray, k1: float,
                    k2: float, m: float) -> float:
    cands = numpy.unique(D[numpy.triu_indices(len(masses), 1)])
    cands = cands[cands > 0]
    lo, hi = -1, len(cands) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if milp_separation_feasible(D, masses, k1, k2, cands[mid], m):
            lo = mid
        else:
            hi = mid - 1
    return 0.0 if lo < 0 else float(cands[lo])


def greedy_separation(D: FloatArray, masses: FloatArray, k1: float,
                      k2: float, m: float) -> float:
    """greedy_separation Lower bound on the separation distance from balls
    grown around every atom."""
    best = 0.0
    for x in range(len(masses)):
        order = numpy.argsort(D[x], kind="stable")
        cum = numpy.cumsum(masses[order])
        hit = numpy.flatnonzero(reaches(cum, k1, m))
        if hit.size == 0:
            continue
        A = order[:hit[0] + 1]
        g = D[A].min(axis=0)
        o = numpy.argsort(-g, kind="stable")
        cum_b = numpy.cumsum(masses[o])
        hit_b = numpy.flatnonzero(reaches(cum_b, k2, m))
        if hit_b.size:
            best = max(best, float(g[o[hit_b[0]]]))
    return best
