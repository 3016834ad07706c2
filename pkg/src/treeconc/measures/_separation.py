"""exact separation distance on the real line and on trees

Both routines bisect over the pairwise distances of the support and decide
"are there A, B with masses >= k1, k2 and d(A, B) >= t" with a dynamic
program that carries Pareto fronts of (mass of A, mass of B). Masses are
capped at the levels. Widely spaced atoms turn the question into subset
sum, so a single mass total per state is not enough.
"""
from typing import List, Tuple

import numpy

from .._util import reaches
from ..rtree import Tree, TreePoint
from ..typing import FloatArray


def _levels(masses: FloatArray, k1: float, k2: float) -> Tuple[float, float]:
    # both sets have to be non-empty, which for positive masses is the
    # same as carrying at least the lightest atom
    w_min = float(masses.min())
    return max(k1, w_min), max(k2, w_min)


def _front2(rows: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
    rows = sorted(set(rows), key=lambda r: (-r[0], -r[1]))
    out, best_b = [], -numpy.inf
    for a, b in rows:
        if b > best_b:
            out.append((a, b))
            best_b = b
    return out


def _bisect(cands: FloatArray, feasible, lo: int = -1) -> float:
    # cands[lo] is known to be feasible
    hi = len(cands) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if feasible(cands[mid]):
            lo = mid
        else:
            hi = mid - 1
    return 0.0 if lo < 0 else float(cands[lo])


def _candidates(D: FloatArray) -> FloatArray:
    cands = numpy.unique(D[numpy.triu_indices(D.shape[0], 1)])
    return cands[cands > 0]


## real line
def line_separation_feasible(x: FloatArray, w: FloatArray, k1: float,
                             k2: float, t: float, m: float) -> bool:
    """line_separation_feasible Decide `Sep >= t` for atoms on the line.

    A labelling by A, B or neither splits the sorted support into runs of
    one label. Points between two runs of the same label can join them, so
    a run is a block of consecutive atoms; two runs with different labels
    need a gap of at least `t`, and the next run may as well start at the
    first atom past the gap.

    Args:
        x (FloatArray): positions, ascending
        w (FloatArray): masses aligned with `x`
        k1 (float): level of A (already raised to a non-empty set)
        k2 (float): level of B
        t (float): required distance, positive
        m (float): total mass (slack scale)

    Returns:
        bool
    """
    k = len(x)
    cap = (k1, k2)
    cum = numpy.concatenate([[0.0], numpy.cumsum(w)])
    tol = 1e-12 * max(1.0, t)
    nxt = numpy.searchsorted(x, x + t - tol, side="left")
    # fronts[label][e]: (mass A, mass B) of labellings whose last run has
    # that label and ends at atom e
    fronts = [[[] for _ in range(k)] for _ in range(2)]
    for e in range(k):
        fronts[0][e].append((min(cum[e + 1], k1), 0.0))
        fronts[1][e].append((0.0, min(cum[e + 1], k2)))
    for e in range(k):
        for lab in (0, 1):
            F = _front2(fronts[lab][e])
            for a, b in F:
                if reaches(a, k1, m) and reaches(b, k2, m):
                    return True
            s = int(nxt[e])
            other = 1 - lab
            for e2 in range(s, k):
                block = cum[e2 + 1] - cum[s]
                for a, b in F:
                    if other == 0:
                        fronts[0][e2].append((min(a + block, cap[0]), b))
                    else:
                        fronts[1][e2].append((a, min(b + block, cap[1])))
    return False


def line_separation(x: FloatArray, w: FloatArray, k1: float, k2: float,
                    m: float) -> float:
    """line_separation Exact `Sep(k1, k2)` of atoms on the real line."""
    order = numpy.argsort(x, kind="stable")
    xs, ws = x[order], w[order]
    l1, l2 = _levels(ws, k1, k2)
    cands = _candidates(numpy.abs(xs[:, None] - xs[None, :]))
    return _bisect(cands, lambda t: line_separation_feasible(
        xs, ws, l1, l2, t, m))


## trees
class _Rooted(object):
    """the tree with every interior atom turned into a vertex, rooted at
    vertex 0 and listed in post-order"""

    def __init__(self, tree: Tree, points: List[TreePoint],
                 masses: FloatArray):
        n = tree.n_vertices
        mass = [0.0] * n
        parent = [-1] * n
        length = [0.0] * n
        on_edge = dict()
        for p, w in zip(points, masses):
            if p.is_vertex:
                mass[p.vertex] += float(w)
            else:
                on_edge.setdefault(p.edge, []).append((p.offset, float(w)))
        order = list(tree.bfs_order)
        for c in order[1:]:
            e = int(tree.parent_edge[c])
            top = int(tree.parent[c])
            L = float(tree.length[e])
            # offsets measured from the parent end
            flip = int(tree.eu[e]) != top
            stops = sorted((L - off if flip else off, w)
                           for off, w in on_edge.get(e, []))
            prev, at = top, 0.0
            for d, w in stops:
                node = len(mass)
                mass.append(w)
                parent.append(prev)
                length.append(d - at)
                prev, at = node, d
            parent[c] = prev
            length[c] = L - at
        self.mass = numpy.asarray(mass)
        self.parent = numpy.asarray(parent, dtype=int)
        self.length = numpy.asarray(length)
        children = [[] for _ in mass]
        for v, p in enumerate(parent):
            if p >= 0:
                children[p].append(v)
        self.children = children
        # drop branches without atoms
        post, stack = [], [(0, False)]
        while stack:
            v, done = stack.pop()
            if done:
                post.append(v)
                continue
            stack.append((v, True))
            for c in children[v]:
                stack.append((c, False))
        loaded = numpy.zeros(len(mass), dtype=bool)
        for v in post:
            loaded[v] = self.mass[v] > 0 or any(loaded[c]
                                               for c in children[v])
        self.loaded = loaded
        self.post = [v for v in post if loaded[v]]


def _prune4(S: numpy.ndarray, full_limit: int = 2000) -> numpy.ndarray:
    # rows (dA, dB, a, b), larger is better in every column
    S = numpy.unique(S, axis=0)
    S = S[numpy.lexsort((-S[:, 3], -S[:, 2], S[:, 1], S[:, 0]))]
    # within one (dA, dB) group keep the rows whose b beats every row with
    # a larger a; the group offset makes one running max serve all groups
    step = numpy.any(numpy.diff(S[:, :2], axis=0) != 0, axis=1)
    group = numpy.concatenate([[0], numpy.cumsum(step)])
    shifted = S[:, 3] + group * (S[:, 3].max() + 1.0)
    before = numpy.concatenate(
        [[-numpy.inf], numpy.maximum.accumulate(shifted)[:-1]])
    S = S[shifted > before]
    if 1 < len(S) <= full_limit:
        ge = numpy.all(S[None, :, :] >= S[:, None, :], axis=2)
        gt = numpy.any(S[None, :, :] > S[:, None, :], axis=2)
        S = S[~numpy.any(ge & gt, axis=1)]
    return S


def tree_separation_feasible(rooted: _Rooted, k1: float, k2: float,
                             t: float, m: float) -> bool:
    """tree_separation_feasible Decide `Sep >= t` for atoms on a tree.

    For the part of the tree below a vertex v only the distances from v to
    the nearest A and the nearest B atom (capped at `t`) matter to the rest
    of the tree, since every path leaving that part passes through v. The
    state of a part is a front of rows (dA, dB, mass A, mass B).

    Args:
        rooted (_Rooted): atoms as vertices, rooted
        k1 (float): level of A (already raised to a non-empty set)
        k2 (float): level of B
        t (float): required distance, positive
        m (float): total mass (slack scale)

    Returns:
        bool
    """
    tol = 1e-12 * max(1.0, t)
    state = dict()
    for v in rooted.post:
        w = rooted.mass[v]
        rows = [(t, t, 0.0, 0.0)]
        if w > 0:
            rows += [(0.0, t, min(w, k1), 0.0), (t, 0.0, 0.0, min(w, k2))]
        S = numpy.asarray(rows)
        for c in rooted.children[v]:
            if not rooted.loaded[c]:
                continue
            C = state.pop(c).copy()
            C[:, :2] = numpy.minimum(C[:, :2] + rooted.length[c], t)
            ok = (S[:, None, 0] + C[None, :, 1] >= t - tol) & \
                (C[None, :, 0] + S[:, None, 1] >= t - tol)
            i, j = numpy.nonzero(ok)
            S = numpy.stack([
                numpy.minimum(S[i, 0], C[j, 0]),
                numpy.minimum(S[i, 1], C[j, 1]),
                numpy.minimum(S[i, 2] + C[j, 2], k1),
                numpy.minimum(S[i, 3] + C[j, 3], k2),
            ], axis=1)
            S = _prune4(S)
            if numpy.any(reaches(S[:, 2], k1, m) & reaches(S[:, 3], k2, m)):
                return True
        state[v] = S
        if numpy.any(reaches(S[:, 2], k1, m) & reaches(S[:, 3], k2, m)):
            return True
    return False


def tree_separation(tree: Tree, points: List[TreePoint], masses: FloatArray,
                    D: FloatArray, k1: float, k2: float, m: float,
                    lower: float = 0.0) -> float:
    """tree_separation Exact `Sep(k1, k2)` of atoms on a tree.

    Args:
        tree (Tree): ambient tree
        points (List[TreePoint]): atom locations
        masses (FloatArray): atom masses
        D (FloatArray): atom distance matrix
        k1 (float): level of A
        k2 (float): level of B
        m (float): total mass
        lower (float, optional): a separation known to be attained, the
            bisection starts above it. Defaults to 0.

    Returns:
        float
    """
    rooted = _Rooted(tree, points, masses)
    l1, l2 = _levels(masses, k1, k2)
    cands = _candidates(D)
    lo = int(numpy.searchsorted(cands, lower * (1 + 1e-12),
                                side="right")) - 1
    return _bisect(cands, lambda t: tree_separation_feasible(
        rooted, l1, l2, t, m), lo)


def disjoint_possible(k1: float, k2: float, m: float) -> bool:
    """disjoint_possible Can two disjoint sets carry `k1` and `k2`?"""
    return bool(reaches(m, k1 + k2, m))
