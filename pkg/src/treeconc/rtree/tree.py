"""finite simplicial trees with real edge lengths

A `Tree` is immutable after construction. Vertices are addressed
internally by their position in `Tree.vertex_ids`; each edge keeps the
endpoint order it was given in, and interior points of an edge are stored
as an offset measured from its first endpoint.
"""
import dataclasses
from typing import Dict, List, Optional, Sequence, Tuple

import numpy
from scipy import sparse
from scipy.sparse import csgraph

from ..typing import (
    EdgeRef, FloatArray, Geodesic, GeodesicPiece, IndexArray, VertexId
)


@dataclasses.dataclass(frozen=True)
class TreePoint:
    """point of a tree: either a vertex, or an interior point of an edge

    Exactly one of `vertex` and `edge` is non-negative. Instances made by
    `Tree.vertex`/`Tree.point` are canonical, so equal points compare equal.
    """
    vertex: int = -1
    edge: int = -1
    offset: float = 0.0

    @property
    def is_vertex(self) -> bool:
        return self.vertex >= 0


class Tree(object):
    """Tree Finite simplicial tree serving as an R-tree.

    Args:
        vertices (Sequence[VertexId]): vertex ids, must be unique
        edges (Sequence[Tuple[VertexId,VertexId,float]]): (u, v, length)
        tol (float, optional): offsets within `tol` of an edge end are
            snapped to the vertex. Defaults to 1e-12.
        dense_limit (int, optional): keep a dense vertex distance matrix
            when the tree has at most this many vertices. Defaults to 2048.

    Raises:
        ValueError: the edges do not form a tree on the vertices, or a
            length is not strictly positive and finite
    """

    def __init__(self, vertices: Sequence[VertexId],
                 edges: Sequence[Tuple[VertexId, VertexId, float]],
                 tol: float = 1e-12, dense_limit: int = 2048):
        self.vertex_ids = list(vertices)
        n = len(self.vertex_ids)
        if n == 0:
            raise ValueError("tree must have at least one vertex")
        self._index = dict()
        for i, vid in enumerate(self.vertex_ids):
            if vid in self._index:
                raise ValueError("duplicate vertex id: {}".format(vid))
            self._index[vid] = i
        # string lookup so that "v:<id>" works for non-string ids
        self._str_index = {str(v): i for i, v in enumerate(self.vertex_ids)}
        if len(edges) != n - 1:
            raise ValueError(
                "a tree on {:d} vertices needs {:d} edges, got {:d}".format(
                    n, n - 1, len(edges)))
        eu, ev, ln = [], [], []
        for edge in edges:
            if len(edge) != 3:
                raise ValueError("edges must be (u, v, length) triples")
            u, v, length = edge
            if u not in self._index or v not in self._index:
                raise ValueError("edge ({}, {}) has unknown endpoint".format(
                    u, v))
            if u == v:
                raise ValueError("self loop at vertex {}".format(u))
            length = float(length)
            if not numpy.isfinite(length) or length <= 0:
                raise ValueError(
                    "edge lengths must be positive and finite, got {}".format(
                        length))
            eu.append(self._index[u])
            ev.append(self._index[v])
            ln.append(length)
        self.eu = numpy.asarray(eu, dtype=int)
        self.ev = numpy.asarray(ev, dtype=int)
        self.length = numpy.asarray(ln, dtype=float)
        self.tol = float(tol)
        self._edge_of: Dict[Tuple[int, int], int] = dict()
        self.incident: List[List[int]] = [[] for _ in range(n)]
        for e, (u, v) in enumerate(zip(eu, ev)):
            if (u, v) in self._edge_of:
                raise ValueError("parallel edges between {} and {}".format(
                    self.vertex_ids[u], self.vertex_ids[v]))
            self._edge_of[(u, v)] = e
            self._edge_of[(v, u)] = e
            self.incident[u].append(e)
            self.incident[v].append(e)
        self._graph = sparse.csr_matrix(
            (self.length, (self.eu, self.ev)), shape=(n, n))
        n_comp, _ = csgraph.connected_components(self._graph, directed=False)
        if n_comp != 1:
            raise ValueError("edges do not connect all vertices")
        # rooted structure at vertex 0, used for vertex paths
        order, pred = csgraph.breadth_first_order(
            self._graph, 0, directed=False, return_predecessors=True)
        self._order = numpy.asarray(order, dtype=int)
        self.parent = numpy.where(pred < 0, -1, pred).astype(int)
        self.parent_edge = numpy.full(n, -1, dtype=int)
        self.depth = numpy.zeros(n, dtype=int)
        for v in self._order[1:]:
            p = self.parent[v]
            self.parent_edge[v] = self._edge_of[(p, v)]
            self.depth[v] = self.depth[p] + 1
        if n <= dense_limit:
            vd = csgraph.shortest_path(self._graph, directed=False)
            self._vdm: Optional[FloatArray] = numpy.minimum(vd, vd.T)
        else:
            self._vdm = None

    ## construction helpers
    @classmethod
    def from_json(cls, obj, **kwargs) -> "Tree":
        """from_json Build from `{"vertices": [...], "edges": [[u,v,L],...]}`.
        """
        if not isinstance(obj, dict) or "vertices" not in obj \
                or "edges" not in obj:
            raise ValueError("tree json needs 'vertices' and 'edges'")
        edges = [tuple(e) for e in obj["edges"]]
        return cls(obj["vertices"], edges, **kwargs)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertex_ids),
            "edges": [
                [self.vertex_ids[u], self.vertex_ids[v], float(L)]
                for u, v, L in zip(self.eu, self.ev, self.length)
            ],
        }

    @classmethod
    def path(cls, lengths: Sequence[float], **kwargs) -> "Tree":
        """path Path tree with vertices 0..k and the given edge lengths."""
        k = len(lengths)
        return cls(list(range(k + 1)),
                   [(i, i + 1, float(L)) for i, L in enumerate(lengths)],
                   **kwargs)

    @classmethod
    def star(cls, lengths: Sequence[float], **kwargs) -> "Tree":
        """star Star with center 0 and leaves 1..k."""
        return cls(list(range(len(lengths) + 1)),
                   [(0, i + 1, float(L)) for i, L in enumerate(lengths)],
                   **kwargs)

    ## basic properties
    @property
    def n_vertices(self) -> int:
        return len(self.vertex_ids)

    @property
    def n_edges(self) -> int:
        return len(self.length)

    @property
    def total_length(self) -> float:
        return float(self.length.sum())

    @property
    def bfs_order(self) -> IndexArray:
        """vertices in breadth first order from the root (vertex 0)"""
        return self._order

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def other_end(self, e: int, v: int) -> int:
        return int(self.ev[e]) if self.eu[e] == v else int(self.eu[e])

    def vertex_index(self, vid: VertexId) -> int:
        if vid in self._index:
            return self._index[vid]
        if isinstance(vid, str) and vid in self._str_index:
            return self._str_index[vid]
        raise ValueError("unknown vertex id: {}".format(vid))

    def edge_index(self, ref: EdgeRef) -> Tuple[int, bool]:
        """edge_index Resolve an edge reference.

        Returns:
            Tuple[int,bool]: edge index, and whether the reference named
                the endpoints against the stored orientation
        """
        if isinstance(ref, (int, numpy.integer)):
            if ref < 0 or ref >= self.n_edges:
                raise ValueError("invalid edge index {}".format(ref))
            return int(ref), False
        if len(ref) != 2:
            raise ValueError("edge must be an index or an endpoint pair")
        u, v = (self.vertex_index(r) for r in ref)
        if (u, v) not in self._edge_of:
            raise ValueError("no edge between {} and {}".format(*ref))
        e = self._edge_of[(u, v)]
        return e, bool(self.eu[e] != u)

    ## points
    def vertex(self, vid: VertexId) -> TreePoint:
        return TreePoint(vertex=self.vertex_index(vid))

    def vertex_at(self, v: int) -> TreePoint:
        if v < 0 or v >= self.n_vertices:
            raise ValueError("invalid vertex index {}".format(v))
        return TreePoint(vertex=int(v))

    def point(self, edge: EdgeRef, offset: float) -> TreePoint:
        """point Canonical point at `offset` along `edge`.

        The offset is measured from the first endpoint of the reference;
        offsets within tolerance of either end give the vertex.

        Raises:
            ValueError: invalid edge or offset outside [0, length]
        """
        e, flipped = self.edge_index(edge)
        L = self.length[e]
        t = float(offset)
        if not numpy.isfinite(t) or t < -self.tol or t > L + self.tol:
            raise ValueError("offset {} out of range [0, {}]".format(t, L))
        if flipped:
            t = L - t
        return self._snap(e, t)

    def _snap(self, e: int, t: float) -> TreePoint:
        L = self.length[e]
        if t <= self.tol:
            return TreePoint(vertex=int(self.eu[e]))
        if t >= L - self.tol:
            return TreePoint(vertex=int(self.ev[e]))
        return TreePoint(edge=int(e), offset=float(t))

    def validate_point(self, p: TreePoint) -> TreePoint:
        if not isinstance(p, TreePoint):
            raise ValueError("expected a TreePoint, got {}".format(type(p)))
        if p.is_vertex:
            if p.vertex >= self.n_vertices:
                raise ValueError("invalid vertex index {}".format(p.vertex))
            return p
        if p.edge < 0 or p.edge >= self.n_edges:
            raise ValueError("invalid edge index {}".format(p.edge))
        if p.offset < -self.tol or p.offset > self.length[p.edge] + self.tol:
            raise ValueError("offset {} out of range".format(p.offset))
        return self._snap(p.edge, p.offset)

    def parse_point(self, obj) -> TreePoint:
        """parse_point Read `"v:<id>"` or `{"edge": [u, v], "offset": t}`."""
        if isinstance(obj, TreePoint):
            return self.validate_point(obj)
        if isinstance(obj, str):
            if not obj.startswith("v:"):
                raise ValueError("vertex points are written 'v:<id>'")
            return self.vertex(obj[2:])
        if isinstance(obj, dict) and "edge" in obj and "offset" in obj:
            edge = obj["edge"]
            if isinstance(edge, list):
                edge = tuple(edge)
            return self.point(edge, obj["offset"])
        raise ValueError("cannot parse tree point: {}".format(obj))

    def point_json(self, p: TreePoint):
        if p.is_vertex:
            return "v:{}".format(self.vertex_ids[p.vertex])
        e = p.edge
        return {
            "edge": [self.vertex_ids[self.eu[e]], self.vertex_ids[self.ev[e]]],
            "offset": float(p.offset),
        }

    def random_point(self, rng: numpy.random.Generator) -> TreePoint:
        if self.n_edges == 0:
            return TreePoint(vertex=0)
        e = int(rng.choice(self.n_edges, p=self.length / self.total_length))
        return self._snap(e, float(rng.uniform(0, self.length[e])))

    ## distances
    def _vertex_rows(self, idx) -> FloatArray:
        idx = numpy.atleast_1d(numpy.asarray(idx, dtype=int))
        if self._vdm is not None:
            return self._vdm[idx]
        return csgraph.shortest_path(self._graph, directed=False,
                                     indices=idx)

    def vertex_distance(self, u: int, v: int) -> float:
        return float(self._vertex_rows([u])[0, v])

    def _anchors(self, points: Sequence[TreePoint]
                 ) -> Tuple[IndexArray, FloatArray]:
        # every point reaches the rest of the tree through at most two
        # vertices, at known distances
        k = len(points)
        av = numpy.empty((k, 2), dtype=int)
        ad = numpy.zeros((k, 2), dtype=float)
        for i, p in enumerate(points):
            if p.is_vertex:
                av[i] = p.vertex
            else:
                e = p.edge
                av[i] = (self.eu[e], self.ev[e])
                ad[i] = (p.offset, self.length[e] - p.offset)
        return av, ad

    def distance(self, p: TreePoint, q: TreePoint) -> float:
        """distance Length of the unique geodesic between `p` and `q`."""
        return float(self.distance_matrix([p], [q])[0, 0])

    def distance_matrix(self, P: Sequence[TreePoint],
                        Q: Optional[Sequence[TreePoint]] = None
                        ) -> FloatArray:
        """distance_matrix Pairwise distances between two lists of points.

        Args:
            P (Sequence[TreePoint]): row points
            Q (Sequence[TreePoint], optional): column points, defaults to P

        Returns:
            FloatArray: `len(P) x len(Q)` matrix
        """
        P = list(P)
        symmetric = Q is None
        Q = P if symmetric else list(Q)
        if len(P) == 0 or len(Q) == 0:
            return numpy.zeros((len(P), len(Q)))
        avP, adP = self._anchors(P)
        avQ, adQ = avP, adP
        if not symmetric:
            avQ, adQ = self._anchors(Q)
        uniq, inv = numpy.unique(avP.ravel(), return_inverse=True)
        rows = self._vertex_rows(uniq)
        inv = inv.reshape(avP.shape)
        D = numpy.full((len(P), len(Q)), numpy.inf)
        for a in range(2):
            Ra = rows[inv[:, a]]
            for b in range(2):
                cand = adP[:, a, None] + Ra[:, avQ[:, b]] + adQ[None, :, b]
                numpy.minimum(D, cand, out=D)
        # two interior points of the same edge see each other directly
        eP = numpy.array([-1 if p.is_vertex else p.edge for p in P])
        eQ = eP if symmetric else \
            numpy.array([-1 if q.is_vertex else q.edge for q in Q])
        same = (eP[:, None] == eQ[None, :]) & (eP[:, None] >= 0)
        if same.any():
            tP = numpy.array([p.offset for p in P])
            tQ = tP if symmetric else numpy.array([q.offset for q in Q])
            D = numpy.where(same, numpy.abs(tP[:, None] - tQ[None, :]), D)
        if symmetric:
            D = numpy.minimum(D, D.T)
            numpy.fill_diagonal(D, 0.0)
        return D

    def distances_to_vertices(self, p: TreePoint) -> FloatArray:
        """distances_to_vertices Distance from `p` to every vertex."""
        av, ad = self._anchors([p])
        rows = self._vertex_rows(av[0])
        return numpy.minimum(ad[0, 0] + rows[0], ad[0, 1] + rows[1])

    def point_vertex_distances(self, points: Sequence[TreePoint],
                               verts: Sequence[int]) -> FloatArray:
        """point_vertex_distances `len(points) x len(verts)` distances."""
        av, ad = self._anchors(list(points))
        rows = self._vertex_rows(verts)
        return numpy.minimum(ad[:, 0, None] + rows[:, av[:, 0]].T,
                             ad[:, 1, None] + rows[:, av[:, 1]].T)

    def diameter(self) -> float:
        if self.n_edges == 0:
            return 0.0
        # double sweep
        d0 = self._vertex_rows([0])[0]
        far = int(numpy.argmax(d0))
        return float(self._vertex_rows([far])[0].max())

    ## geodesics
    def _vertex_path(self, a: int, b: int) -> List[int]:
        # edges from a to b, in order
        up, down = [], []
        while self.depth[a] > self.depth[b]:
            up.append(self.parent_edge[a])
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            down.append(self.parent_edge[b])
            b = self.parent[b]
        while a != b:
            up.append(self.parent_edge[a])
            a = self.parent[a]
            down.append(self.parent_edge[b])
            b = self.parent[b]
        return [int(e) for e in up] + [int(e) for e in reversed(down)]

    def _edge_piece_from(self, e: int, v: int) -> GeodesicPiece:
        # full traversal of edge `e` starting at its endpoint `v`
        L = float(self.length[e])
        return (e, 0.0, L) if self.eu[e] == v else (e, L, 0.0)

    def geodesic(self, p: TreePoint, q: TreePoint) -> Geodesic:
        """geodesic Pieces of the unique geodesic from `p` to `q`.

        Returns:
            Geodesic: list of (edge, start offset, end offset); empty when
                `p == q`
        """
        p = self.validate_point(p)
        q = self.validate_point(q)
        if p == q:
            return []
        # both on one edge (interior, or interior + one of its endpoints)
        e = self._common_edge(p, q)
        if e >= 0:
            return [(e, self._offset_on(p, e), self._offset_on(q, e))]
        avp, adp = self._anchors([p])
        avq, adq = self._anchors([q])
        best, ai, bi = numpy.inf, 0, 0
        for a in range(2):
            row = self._vertex_rows([avp[0, a]])[0]
            for b in range(2):
                d = adp[0, a] + row[avq[0, b]] + adq[0, b]
                if d < best:
                    best, ai, bi = d, a, b
        va, vb = int(avp[0, ai]), int(avq[0, bi])
        pieces: Geodesic = []
        if not p.is_vertex:
            pieces.append((p.edge, p.offset, 0.0 if ai == 0
                           else float(self.length[p.edge])))
        cur = va
        for e in self._vertex_path(va, vb):
            pieces.append(self._edge_piece_from(e, cur))
            cur = self.other_end(e, cur)
        if not q.is_vertex:
            pieces.append((q.edge, 0.0 if bi == 0
                           else float(self.length[q.edge]), q.offset))
        return pieces

    def _common_edge(self, p: TreePoint, q: TreePoint) -> int:
        if not p.is_vertex and not q.is_vertex:
            return p.edge if p.edge == q.edge else -1
        if not p.is_vertex:
            return p.edge if q.vertex in (self.eu[p.edge], self.ev[p.edge]) \
                else -1
        if not q.is_vertex:
            return q.edge if p.vertex in (self.eu[q.edge], self.ev[q.edge]) \
                else -1
        if (p.vertex, q.vertex) in self._edge_of:
            return self._edge_of[(p.vertex, q.vertex)]
        return -1

    def _offset_on(self, p: TreePoint, e: int) -> float:
        if not p.is_vertex:
            return float(p.offset)
        return 0.0 if self.eu[e] == p.vertex else float(self.length[e])

    def point_along(self, p: TreePoint, q: TreePoint, s: float) -> TreePoint:
        """point_along Point at distance `s` from `p` towards `q` (clamped)."""
        pieces = self.geodesic(p, q)
        if s <= 0 or len(pieces) == 0:
            return self.validate_point(p)
        for e, a, b in pieces:
            seg = abs(b - a)
            if s <= seg:
                return self._snap(e, a + s if b >= a else a - s)
            s -= seg
        return self.validate_point(q)

    ## branches
    def branch_edges(self, z: TreePoint) -> List[Tuple[int, int]]:
        """branch_edges Edge and direction of each branch leaving `z`.

        Branch `k` of a vertex leaves along `incident[v][k]`; an interior
        point has branch 0 towards offset 0 and branch 1 towards the end.

        Returns:
            List[Tuple[int,int]]: (edge, +1 / -1 direction in offsets)
        """
        if z.is_vertex:
            return [(e, 1 if self.eu[e] == z.vertex else -1)
                    for e in self.incident[z.vertex]]
        return [(z.edge, -1), (z.edge, 1)]

    def n_branches(self, z: TreePoint) -> int:
        return self.degree(z.vertex) if z.is_vertex else 2

    def branch_labels(self, z: TreePoint,
                      points: Sequence[TreePoint]) -> IndexArray:
        """branch_labels Index of the component of T minus {z} holding each
        point, -1 for points equal to `z`.
        """
        points = list(points)
        k = len(points)
        labels = numpy.full(k, -1, dtype=int)
        if k == 0:
            return labels
        if z.is_vertex:
            v = z.vertex
            inc = self.incident[v]
            if len(inc) == 0:
                return labels
            nbrs = [self.other_end(e, v) for e in inc]
            D = self.point_vertex_distances(points, nbrs + [v])
            dv = D[:, -1]
            lab = numpy.argmin(D[:, :-1] - dv[:, None], axis=1)
            pos = {e: i for i, e in enumerate(inc)}
            for i, p in enumerate(points):
                if not p.is_vertex and p.edge in pos:
                    lab[i] = pos[p.edge]
            labels = numpy.where(dv <= self.tol, -1, lab)
            return labels
        e, t = z.edge, z.offset
        D = self.point_vertex_distances(points, [self.eu[e], self.ev[e]])
        lab = numpy.where(D[:, 0] < D[:, 1], 0, 1)
        for i, p in enumerate(points):
            if not p.is_vertex and p.edge == e:
                if abs(p.offset - t) <= self.tol:
                    lab[i] = -1
                else:
                    lab[i] = 0 if p.offset < t else 1
        return lab

    def step(self, z: TreePoint, branch: int, s: float) -> TreePoint:
        """step Move distance `s` from `z` into `branch`, staying on the
        first edge of that branch (s is clamped to the edge end).
        """
        e, sign = self.branch_edges(z)[branch]
        t0 = self._offset_on(z, e)
        end = self.length[e] if sign > 0 else 0.0
        room = abs(end - t0)
        if s >= room:
            return self._snap(e, end)
        return self._snap(e, t0 + sign * s)

    def room_in_branch(self, z: TreePoint, branch: int) -> float:
        """room_in_branch Distance from `z` to the far end of the first edge
        of `branch`."""
        e, sign = self.branch_edges(z)[branch]
        t0 = self._offset_on(z, e)
        return float(self.length[e] - t0 if sign > 0 else t0)

    def ahead_on_edge(self, z: TreePoint, branch: int,
                      points: Sequence[TreePoint]) -> FloatArray:
        """ahead_on_edge Distances from `z` to those `points` that lie on the
        first edge of `branch`, strictly ahead of `z` (others are inf).
        """
        e, sign = self.branch_edges(z)[branch]
        t0 = self._offset_on(z, e)
        out = numpy.full(len(points), numpy.inf)
        for i, p in enumerate(points):
            if p.is_vertex or p.edge != e:
                continue
            d = (p.offset - t0) * sign
            if d > self.tol:
                out[i] = d
        return out

    ## components
    def component_vertices(self, v: int, e: int) -> numpy.ndarray:
        """component_vertices Boolean mask of vertices reachable from the far
        end of edge `e` without passing vertex `v`."""
        mask = numpy.zeros(self.n_vertices, dtype=bool)
        start = self.other_end(e, v)
        stack = [start]
        mask[start] = True
        while stack:
            u = stack.pop()
            for f in self.incident[u]:
                w = self.other_end(f, u)
                if w == v or mask[w]:
                    continue
                mask[w] = True
                stack.append(w)
        return mask

    def __repr__(self) -> str:
        return "Tree(n_vertices={:d}, total_length={:.6g})".format(
            self.n_vertices, self.total_length)


def tree_distance(T: Tree, p: TreePoint, q: TreePoint) -> float:
    """tree_distance Geodesic distance between two points of `T`.

    Args:
        T (Tree): the tree
        p (TreePoint): first point
        q (TreePoint): second point

    Raises:
        ValueError: invalid edge id or offset

    Returns:
        float
    """
    return T.distance(T.validate_point(p), T.validate_point(q))


def geodesic(T: Tree, p: TreePoint, q: TreePoint) -> Geodesic:
    """geodesic Ordered (edge, start, end) pieces of the geodesic p -> q."""
    return T.geodesic(p, q)
