"""Wasserstein-1 distances between atomic measures of equal mass

On a tree the optimal cost is the edge-cut sum: every elementary segment
(the edges refined at all atoms) is crossed by exactly the net mass lying
beyond it. On the line the same identity reads `int |F_mu - F_nu|`. The
oracle solves the transportation linear program directly.
"""
import dataclasses
from collections import defaultdict
from typing import Tuple

import numpy
from scipy.optimize import linprog

from .._util import mass_slack
from ..measures import LineMeasure, TreeMeasure
from ..rtree import Tree
from ..typing import FloatArray, IndexArray

# the transportation oracle is dense in k1 * k2 variables
ORACLE_ATOM_LIMIT = 64


@dataclasses.dataclass
class TransportPlan:
    source: IndexArray
    target: IndexArray
    mass: FloatArray
    cost: float

    def as_matrix(self, k1: int, k2: int) -> FloatArray:
        P = numpy.zeros((k1, k2))
        numpy.add.at(P, (self.source, self.target), self.mass)
        return P

    def to_json(self) -> dict:
        return {
            "cost": float(self.cost),
            "moves": [[int(i), int(j), float(w)] for i, j, w in
                      zip(self.source, self.target, self.mass)],
        }


def _check_masses(m1: float, m2: float):
    if abs(m1 - m2) > mass_slack(max(m1, m2)):
        raise ValueError(
            "measures must have equal total mass ({:.12g} vs {:.12g})".format(
                m1, m2))


def w1_tree(T: Tree, mu: TreeMeasure, nu: TreeMeasure) -> float:
    """w1_tree Wasserstein-1 distance of two measures on `T`.

    Args:
        T (Tree): the tree both measures live on
        mu (TreeMeasure): first measure
        nu (TreeMeasure): second measure

    Raises:
        ValueError: total masses differ

    Returns:
        float
    """
    _check_masses(mu.m, nu.m)
    net = numpy.zeros(T.n_vertices)
    # interior atoms per edge: (distance from the child end, net mass)
    interior = defaultdict(list)
    child = numpy.full(T.n_edges, -1, dtype=int)
    for v in T.bfs_order[1:]:
        child[T.parent_edge[v]] = v
    for meas, sign in ((mu, 1.0), (nu, -1.0)):
        for p, w in zip(meas.points, meas.masses):
            p = T.validate_point(p)
            if p.is_vertex:
                net[p.vertex] += sign * w
                continue
            e = p.edge
            t = p.offset if T.eu[e] == child[e] \
                else float(T.length[e]) - p.offset
            interior[e].append((t, sign * w))
    cost = 0.0
    for v in T.bfs_order[::-1][:-1]:
        e = int(T.parent_edge[v])
        flow, pos = net[v], 0.0
        for t, w in sorted(interior.get(e, [])):
            cost += abs(flow) * (t - pos)
            flow += w
            pos = t
        cost += abs(flow) * (float(T.length[e]) - pos)
        net[T.parent[v]] += flow
    return float(cost)


def w1_line(mu: LineMeasure, nu: LineMeasure) -> float:
    """w1_line Wasserstein-1 distance of two measures on the real line.

    Raises:
        ValueError: a measure is not one dimensional, or masses differ

    Returns:
        float: `int |F_mu - F_nu|` over the merged breakpoints
    """
    if mu.dim != 1 or nu.dim != 1:
        raise ValueError("w1_line needs measures on the real line")
    _check_masses(mu.m, nu.m)
    x = numpy.concatenate([mu.positions[:, 0], nu.positions[:, 0]])
    w = numpy.concatenate([mu.masses, -nu.masses])
    grid, inv = numpy.unique(x, return_inverse=True)
    jump = numpy.bincount(inv.ravel(), weights=w, minlength=len(grid))
    gap = numpy.cumsum(jump)[:-1]
    return float(numpy.abs(gap) @ numpy.diff(grid))


def w1_oracle(dist, mu_masses, nu_masses) -> Tuple[float, TransportPlan]:
    """w1_oracle Optimal coupling by linear programming (HiGHS).

    Args:
        dist (array-like): `k1 x k2` cost matrix between the supports
        mu_masses (Sequence[float]): source masses
        nu_masses (Sequence[float]): target masses

    Raises:
        ValueError: too many atoms, bad shapes, or unequal totals

    Returns:
        Tuple[float, TransportPlan]: optimal cost and a vertex plan
    """
    C = numpy.asarray(dist, dtype=float)
    a = numpy.asarray(mu_masses, dtype=float).ravel()
    b = numpy.asarray(nu_masses, dtype=float).ravel()
    k1, k2 = len(a), len(b)
    if k1 > ORACLE_ATOM_LIMIT or k2 > ORACLE_ATOM_LIMIT:
        raise ValueError("transport oracle handles at most {:d} atoms per "
                         "side".format(ORACLE_ATOM_LIMIT))
    if C.shape != (k1, k2):
        raise ValueError("cost matrix must be {:d}x{:d}".format(k1, k2))
    if numpy.any(a < 0) or numpy.any(b < 0):
        raise ValueError("masses must be non-negative")
    _check_masses(a.sum(), b.sum())
    # row sums and column sums; one equality is implied by the others
    A_eq = numpy.zeros((k1 + k2, k1 * k2))
    for i in range(k1):
        A_eq[i, i * k2:(i + 1) * k2] = 1.0
    for j in range(k2):
        A_eq[k1 + j, j::k2] = 1.0
    b_eq = numpy.concatenate([a, b * (a.sum() / b.sum())])
    res = linprog(C.ravel(), A_eq=A_eq[:-1], b_eq=b_eq[:-1],
                  bounds=(0, None), method="highs")
    if res.status != 0:
        raise ValueError("transportation problem is infeasible: {}".format(
            res.message))
    P = res.x.reshape(k1, k2)
    keep = P > 1e-15 * max(1.0, a.sum())
    src, tgt = numpy.nonzero(keep)
    plan = TransportPlan(src, tgt, P[keep], float(res.fun))
    return float(res.fun), plan


def w1_tree_oracle(T: Tree, mu: TreeMeasure,
                   nu: TreeMeasure) -> Tuple[float, TransportPlan]:
    """w1_tree_oracle `w1_oracle` on tree distances between the supports."""
    D = T.distance_matrix(mu.points, nu.points)
    return w1_oracle(D, mu.masses, nu.masses)
