"""exact suprema over all 1-Lipschitz functions on very small spaces

Observable diameter: once the order of the values along the line is fixed,
the windows carrying mass `m - kappa` are the contiguous runs of that order
and the best arrangement is a linear program. Maximizing over the orders
gives the supremum exactly.

Lp-variation: `V_p` is convex in the values, so its maximum over the
Lipschitz polytope (normalized by `f_0 = 0`) sits at a vertex. Every
vertex is cut out by `n - 1` tight constraints `f_j - f_i = +-d_ij` forming
a spanning tree, which are enumerated through Pruefer sequences.
"""
import itertools
from functools import lru_cache
from typing import List, Tuple

import numpy
from scipy.optimize import linprog

from .._util import mass_slack, reaches
from ..measures import MMSpace
from ..typing import FloatArray
from .witness import lipschitz_repair


def _minimal_runs(w: FloatArray, target: float, m: float) -> List[int]:
    # for every start i, the end of the shortest run i..j reaching target
    n = len(w)
    cum = numpy.concatenate([[0.0], numpy.cumsum(w)])
    ends = []
    for i in range(n):
        j = int(numpy.searchsorted(cum, cum[i] + target - mass_slack(m),
                                   side="left"))
        ends.append(max(j - 1, i) if j <= n else -1)
    return ends


def _order_lp(D: FloatArray, order: Tuple[int, ...], ends: List[int]
              ) -> Tuple[float, FloatArray]:
    n = len(order)
    # variables: f_0..f_{n-1} (by point index), t
    c = numpy.zeros(n + 1)
    c[-1] = -1.0
    rows, rhs = [], []
    for i, j in enumerate(ends):
        if j < 0:
            continue
        a, b = order[i], order[j]
        r = numpy.zeros(n + 1)
        r[-1] = 1.0
        r[a] += 1.0
        r[b] -= 1.0
        rows.append(r)
        rhs.append(0.0)
    for k in range(n - 1):
        a, b = order[k], order[k + 1]
        r = numpy.zeros(n + 1)
        r[a], r[b] = 1.0, -1.0
        rows.append(r)
        rhs.append(0.0)
    for k in range(n):
        for l in range(k + 1, n):
            a, b = order[k], order[l]
            r = numpy.zeros(n + 1)
            r[b], r[a] = 1.0, -1.0
            rows.append(r)
            rhs.append(D[a, b])
    A_eq = numpy.zeros((1, n + 1))
    A_eq[0, order[0]] = 1.0
    bounds = [(None, None)] * n + [(0, None)]
    res = linprog(c, A_ub=numpy.asarray(rows), b_ub=numpy.asarray(rhs),
                  A_eq=A_eq, b_eq=[0.0], bounds=bounds, method="highs")
    if res.status != 0:
        return 0.0, numpy.zeros(n)
    return float(-res.fun), res.x[:n]


def ordering_oracle_obsdiam(X: MMSpace, kappa: float
                            ) -> Tuple[float, FloatArray]:
    """ordering_oracle_obsdiam Exact `sup_f diam(f_* mu, m - kappa)` over
    1-Lipschitz `f : X -> R`.

    Returns:
        Tuple[float, FloatArray]: the supremum and a maximizing function
    """
    n = X.n
    m = X.m
    if n == 1 or reaches(kappa, m, m):
        return 0.0, numpy.zeros(n)
    D = X.dist
    target = m - kappa
    best, best_f = 0.0, numpy.zeros(n)
    for order in itertools.permutations(range(n)):
        # reversing an order negates the function, same value
        if order[0] > order[-1]:
            continue
        ends = _minimal_runs(X.masses[list(order)], target, m)
        bound = min(D[order[i], order[j]] for i, j in enumerate(ends)
                    if j >= 0)
        if bound <= best:
            continue
        val, f = _order_lp(D, order, ends)
        if val > best:
            best, best_f = val, f
    return best, lipschitz_repair(D, best_f)


@lru_cache(maxsize=None)
def spanning_trees(n: int) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """spanning_trees All labelled trees on `n` vertices as edge lists,
    each listed parent-first from vertex 0."""
    if n == 1:
        return ((),)
    if n == 2:
        return (((0, 1),),)
    out = []
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [k for k in range(n) if degree[k] == 1]
        edges.append((u, v))
        out.append(_orient(n, edges))
    return tuple(out)


def _orient(n: int, edges) -> Tuple[Tuple[int, int], ...]:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = [False] * n
    seen[0] = True
    queue, out = [0], []
    while queue:
        a = queue.pop(0)
        for b in adj[a]:
            if not seen[b]:
                seen[b] = True
                out.append((a, b))
                queue.append(b)
    return tuple(out)


def vertex_oracle_vp(X: MMSpace, p: float, tol: float = 1e-12
                     ) -> Tuple[float, FloatArray]:
    """vertex_oracle_vp Exact `sup_f V_p(f_* mu)` over 1-Lipschitz
    `f : X -> R` by enumerating the vertices of the Lipschitz polytope.

    Returns:
        Tuple[float, FloatArray]: the supremum and a maximizing function
    """
    n = X.n
    if n == 1:
        return 0.0, numpy.zeros(1)
    D = X.dist
    w = X.masses
    signs = numpy.array(list(itertools.product((1.0, -1.0), repeat=n - 1)))
    scale = tol * max(1.0, float(D.max()))
    best, best_f = 0.0, numpy.zeros(n)
    for edges in spanning_trees(n):
        F = numpy.zeros((len(signs), n))
        for k, (a, b) in enumerate(edges):
            F[:, b] = F[:, a] + signs[:, k] * D[a, b]
        gap = numpy.abs(F[:, :, None] - F[:, None, :])
        ok = (gap - D[None]).max(axis=(1, 2)) <= scale
        if not ok.any():
            continue
        vals = numpy.einsum("i,kij,j->k", w, gap[ok] ** p, w)
        k = int(numpy.argmax(vals))
        if vals[k] > best:
            best, best_f = float(vals[k]), F[ok][k]
    return best ** (1.0 / p), best_f
