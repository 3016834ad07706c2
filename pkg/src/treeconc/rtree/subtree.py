"""closed convex subsets (subtrees) of a finite tree
"""
from typing import List, Optional, Sequence

import numpy

from .tree import Tree, TreePoint


class Subtree(object):
    """Subtree Closed convex subset of a `Tree`.

    Stored as a vertex mask plus, per edge, the covered offset interval
    `[lo, hi]` (NaN when the edge is not touched). An interval reaching
    an edge end always comes with that end vertex in the mask; intervals
    that degenerate onto a vertex are dropped in favour of the mask.

    Args:
        tree (Tree): the ambient tree
        verts (numpy.ndarray): boolean mask over vertices
        lo (numpy.ndarray): interval starts per edge (NaN if untouched)
        hi (numpy.ndarray): interval ends per edge (NaN if untouched)
    """

    def __init__(self, tree: Tree, verts, lo, hi):
        self.tree = tree
        tol = tree.tol
        verts = numpy.asarray(verts, dtype=bool).copy()
        lo = numpy.asarray(lo, dtype=float).copy()
        hi = numpy.asarray(hi, dtype=float).copy()
        L = tree.length
        has = ~(numpy.isnan(lo) | numpy.isnan(hi))
        lo = numpy.where(has & (lo <= tol), 0.0, lo)
        hi = numpy.where(has & (hi >= L - tol), L, hi)
        # ends of covered intervals are members
        verts[tree.eu[has & (lo == 0.0)]] = True
        verts[tree.ev[has & (hi == L)]] = True
        # a degenerate interval sitting on a vertex carries no extra points
        degen = has & (hi - lo <= tol) & ((lo == 0.0) | (hi == L))
        lo[degen] = numpy.nan
        hi[degen] = numpy.nan
        self.verts = verts
        self.lo = lo
        self.hi = hi

    @classmethod
    def empty(cls, tree: Tree) -> "Subtree":
        nan = numpy.full(tree.n_edges, numpy.nan)
        return cls(tree, numpy.zeros(tree.n_vertices, dtype=bool), nan, nan)

    @classmethod
    def whole(cls, tree: Tree) -> "Subtree":
        return cls(tree, numpy.ones(tree.n_vertices, dtype=bool),
                   numpy.zeros(tree.n_edges), tree.length.copy())

    @classmethod
    def single(cls, tree: Tree, p: TreePoint) -> "Subtree":
        S = cls.empty(tree)
        if p.is_vertex:
            S.verts[p.vertex] = True
        else:
            S.lo[p.edge] = p.offset
            S.hi[p.edge] = p.offset
        return S

    @property
    def edge_mask(self) -> numpy.ndarray:
        return ~numpy.isnan(self.lo)

    def is_empty(self) -> bool:
        return not self.verts.any() and not self.edge_mask.any()

    def total_length(self) -> float:
        m = self.edge_mask
        return float((self.hi[m] - self.lo[m]).sum())

    def contains(self, p: TreePoint, tol: Optional[float] = None) -> bool:
        tol = self.tree.tol if tol is None else tol
        if p.is_vertex:
            return bool(self.verts[p.vertex])
        lo, hi = self.lo[p.edge], self.hi[p.edge]
        if numpy.isnan(lo):
            return False
        return bool(lo - tol <= p.offset <= hi + tol)

    def member_point(self) -> TreePoint:
        """member_point Some point of the subtree (first vertex, else the
        start of the first interval)."""
        vs = numpy.flatnonzero(self.verts)
        if vs.size:
            return TreePoint(vertex=int(vs[0]))
        es = numpy.flatnonzero(self.edge_mask)
        if es.size == 0:
            raise ValueError("empty subtree has no points")
        e = int(es[0])
        return self.tree._snap(e, float(self.lo[e]))

    def sample(self, rng: numpy.random.Generator) -> TreePoint:
        """sample Random member, uniform along covered length when there is
        any, otherwise a random member vertex."""
        es = numpy.flatnonzero(self.edge_mask)
        if es.size:
            w = self.hi[es] - self.lo[es]
            if w.sum() > 0:
                e = int(rng.choice(es, p=w / w.sum()))
                return self.tree._snap(
                    e, float(rng.uniform(self.lo[e], self.hi[e])))
            e = int(es[0])
            return self.tree._snap(e, float(self.lo[e]))
        vs = numpy.flatnonzero(self.verts)
        if vs.size == 0:
            raise ValueError("empty subtree has no points")
        return TreePoint(vertex=int(rng.choice(vs)))

    def union(self, other: "Subtree") -> "Subtree":
        """union Union with a subtree meeting this one (result assumed
        convex, as for closures of components at a common point)."""
        return Subtree(self.tree, self.verts | other.verts,
                       numpy.fmin(self.lo, other.lo),
                       numpy.fmax(self.hi, other.hi))

    def same_as(self, other: "Subtree", tol: Optional[float] = None) -> bool:
        tol = self.tree.tol if tol is None else tol
        if not numpy.array_equal(self.verts, other.verts):
            return False
        if not numpy.array_equal(self.edge_mask, other.edge_mask):
            return False
        m = self.edge_mask
        return bool(numpy.all(numpy.abs(self.lo[m] - other.lo[m]) <= tol) and
                    numpy.all(numpy.abs(self.hi[m] - other.hi[m]) <= tol))

    def to_json(self) -> dict:
        T = self.tree
        return {
            "vertices": [T.vertex_ids[v] for v in numpy.flatnonzero(
                self.verts)],
            "segments": [
                {
                    "edge": [T.vertex_ids[T.eu[e]], T.vertex_ids[T.ev[e]]],
                    "interval": [float(self.lo[e]), float(self.hi[e])],
                }
                for e in numpy.flatnonzero(self.edge_mask)
            ],
        }

    def __repr__(self) -> str:
        return "Subtree(vertices={:d}, segments={:d}, length={:.6g})".format(
            int(self.verts.sum()), int(self.edge_mask.sum()),
            self.total_length())


def ball_subtree(T: Tree, c: TreePoint, r: float) -> Subtree:
    """ball_subtree Closed metric ball of radius `r` about `c`.

    Args:
        T (Tree): the tree
        c (TreePoint): center
        r (float): radius, must be non-negative

    Raises:
        ValueError: negative radius

    Returns:
        Subtree
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    c = T.validate_point(c)
    tol = T.tol
    dv = T.distances_to_vertices(c)
    verts = dv <= r + tol
    du, dw, L = dv[T.eu], dv[T.ev], T.length
    # off the center's edge one endpoint is nearer, and the ball covers
    # an interval hanging off that endpoint
    near_u = du <= dw
    reach = numpy.where(near_u, r - du, r - dw)
    ok = reach >= -tol
    reach = numpy.clip(reach, 0.0, L)
    lo = numpy.where(near_u, 0.0, L - reach)
    hi = numpy.where(near_u, reach, L)
    lo = numpy.where(ok, lo, numpy.nan)
    hi = numpy.where(ok, hi, numpy.nan)
    if not c.is_vertex:
        e, t = c.edge, c.offset
        lo[e] = max(0.0, t - r)
        hi[e] = min(L[e], t + r)
    return Subtree(T, verts, lo, hi)


def subtree_intersection(T: Tree, A: Subtree,
                         B: Subtree) -> Optional[Subtree]:
    """subtree_intersection Intersection of two subtrees.

    Returns:
        Optional[Subtree]: the intersection, or None when it is empty
    """
    tol = T.tol
    lo = numpy.fmax(A.lo, B.lo)
    hi = numpy.fmin(A.hi, B.hi)
    both = A.edge_mask & B.edge_mask
    lo = numpy.where(both, lo, numpy.nan)
    hi = numpy.where(both, hi, numpy.nan)
    overlap = hi >= lo - tol
    # touching within tolerance collapses to a single point
    hi = numpy.where(overlap & (hi < lo), lo, hi)
    lo = numpy.where(overlap, lo, numpy.nan)
    hi = numpy.where(overlap, hi, numpy.nan)
    S = Subtree(T, A.verts & B.verts, lo, hi)
    if S.is_empty():
        return None
    return S


def metric_projection(T: Tree, S: Subtree, p: TreePoint) -> TreePoint:
    """metric_projection Nearest point of `S` to `p`.

    The nearest point is the first point of `S` met on the geodesic from
    `p` to any member of `S`.

    Raises:
        ValueError: `S` is empty

    Returns:
        TreePoint
    """
    if S is None or S.is_empty():
        raise ValueError("cannot project onto an empty subtree")
    p = T.validate_point(p)
    if S.contains(p):
        return p
    target = S.member_point()
    for idx, (e, a, b) in enumerate(T.geodesic(p, target)):
        if idx > 0:
            v = int(T.eu[e]) if a == 0.0 else int(T.ev[e])
            if S.verts[v]:
                return TreePoint(vertex=v)
        lo, hi = S.lo[e], S.hi[e]
        if numpy.isnan(lo):
            continue
        if b >= a and hi >= a - T.tol and lo <= b + T.tol:
            return T._snap(e, max(a, lo))
        if b < a and lo <= a + T.tol and hi >= b - T.tol:
            return T._snap(e, min(a, hi))
    return target


def spanning_subtree(T: Tree, pts: Sequence[TreePoint]) -> Subtree:
    """spanning_subtree Smallest subtree containing all `pts` (the union of
    the geodesics from the first point to each of the others).

    Raises:
        ValueError: `pts` is empty

    Returns:
        Subtree
    """
    pts = [T.validate_point(p) for p in pts]
    if len(pts) == 0:
        raise ValueError("need at least one point")
    S = Subtree.single(T, pts[0])
    verts, lo, hi = S.verts.copy(), S.lo.copy(), S.hi.copy()
    for q in pts[1:]:
        if q.is_vertex:
            verts[q.vertex] = True
        for e, a, b in T.geodesic(pts[0], q):
            lo[e] = numpy.fmin(lo[e], min(a, b))
            hi[e] = numpy.fmax(hi[e], max(a, b))
    return Subtree(T, verts, lo, hi)


def components_at(T: Tree, z: TreePoint) -> List[Subtree]:
    """components_at Closures of the connected components of T minus {z}.

    Components are listed in branch order (see `Tree.branch_edges`). A
    point with no branches (the one-vertex tree) yields `[{z}]`.

    Returns:
        List[Subtree]
    """
    z = T.validate_point(z)
    out = []
    if z.is_vertex:
        v = z.vertex
        if T.degree(v) == 0:
            return [Subtree.single(T, z)]
        for e in T.incident[v]:
            mask = T.component_vertices(v, e)
            inside = mask[T.eu] & mask[T.ev]
            inside[e] = True
            mask[v] = True
            lo = numpy.where(inside, 0.0, numpy.nan)
            hi = numpy.where(inside, T.length, numpy.nan)
            out.append(Subtree(T, mask, lo, hi))
        return out
    e, t = z.edge, z.offset
    for end, interval in ((int(T.eu[e]), (0.0, t)),
                          (int(T.ev[e]), (t, float(T.length[e])))):
        mask = T.component_vertices(T.other_end(e, end), e)
        inside = mask[T.eu] & mask[T.ev]
        inside[e] = False
        lo = numpy.where(inside, 0.0, numpy.nan)
        hi = numpy.where(inside, T.length, numpy.nan)
        lo[e], hi[e] = interval
        out.append(Subtree(T, mask, lo, hi))
    return out
