"""medians of atomic measures on trees

A median is a point `z` together with two subtrees covering the tree,
meeting only in `z`, each carrying at least a third of the mass. At a point
with own mass `m_z` and open branch masses `M_k` a median exists iff
`m_z >= m/3` or every `M_k <= 2m/3`; otherwise the one heavy branch holds
more than `2m/3` and the walk moves into it. The branch it came from then
weighs less than `m/3`, so the walk never turns back.
"""
import dataclasses
from functools import reduce
from typing import List, Tuple

import numpy

from .._util import reaches
from ..measures import TreeMeasure
from ..rtree import Subtree, Tree, TreePoint, components_at
from ..rtree import spanning_subtree


@dataclasses.dataclass
class MedianResult:
    point: TreePoint
    part_a: Subtree
    part_b: Subtree
    mass_a: float
    mass_b: float

    def to_json(self, tree: Tree) -> dict:
        return {
            "point": tree.point_json(self.point),
            "parts": [self.part_a.to_json(), self.part_b.to_json()],
            "masses": [float(self.mass_a), float(self.mass_b)],
        }


def branch_masses(T: Tree, nu: TreeMeasure,
                  z: TreePoint) -> Tuple[numpy.ndarray, float]:
    """branch_masses Mass of every open branch at `z`, and the mass at `z`.
    """
    labels = T.branch_labels(z, nu.points)
    off = labels >= 0
    M = numpy.bincount(labels[off], weights=nu.masses[off],
                       minlength=T.n_branches(z))
    return M, float(nu.masses[~off].sum())


def _start_point(T: Tree, nu: TreeMeasure) -> TreePoint:
    # first branching vertex of the support hull, else the heaviest atom
    hull = spanning_subtree(T, nu.points)
    for v in numpy.flatnonzero(hull.verts):
        touching = 0
        for e in T.incident[v]:
            if not hull.edge_mask[e]:
                continue
            if T.eu[e] == v and hull.lo[e] == 0.0:
                touching += 1
            elif T.ev[e] == v and hull.hi[e] == T.length[e]:
                touching += 1
        if touching >= 2:
            return TreePoint(vertex=int(v))
    return nu.points[int(numpy.argmax(nu.masses))]


def _group(M: numpy.ndarray, need: float, m: float) -> List[int]:
    # heaviest branches first until the group reaches `need`
    order = numpy.argsort(-M, kind="stable")
    group = [int(order[0])]
    acc = float(M[order[0]])
    for k in order[1:]:
        if reaches(acc, need, m):
            break
        group.append(int(k))
        acc += float(M[k])
    return group


def _union(parts: List[Subtree]) -> Subtree:
    return reduce(lambda a, b: a.union(b), parts)


def tree_median(T: Tree, nu: TreeMeasure, max_iter: int = 0,
                verbose: bool = False) -> MedianResult:
    """tree_median A median of `nu` with its two-subtree certificate.

    Args:
        T (Tree): the tree
        nu (TreeMeasure): the measure
        max_iter (int, optional): iteration guard, 0 derives one from the
            instance size. Defaults to 0.
        verbose (bool, optional): print the walk. Defaults to False.

    Raises:
        ValueError: `nu` lives on another tree
        RuntimeError: the walk exceeded `max_iter` steps

    Returns:
        MedianResult
    """
    if nu.tree is not T:
        raise ValueError("measure lives on a different tree")
    m = nu.m
    third = m / 3
    if max_iter <= 0:
        max_iter = 2 * (T.n_vertices + len(nu)) + 8
    z = _start_point(T, nu)
    for it in range(max_iter):
        M, m_z = branch_masses(T, nu, z)
        if len(M) >= 2 and reaches(2 * third, float(M.max()), m):
            S = _group(M, third - m_z, m)
            rest = [k for k in range(len(M)) if k not in S]
            comps = components_at(T, z)
            if verbose:
                print("median found after {:d} steps, split {} | {}".format(
                    it, S, rest), flush=True)
            return MedianResult(z, _union([comps[k] for k in S]),
                                _union([comps[k] for k in rest]),
                                m_z + float(M[S].sum()),
                                m_z + float(M[rest].sum()))
        if reaches(m_z, third, m):
            if verbose:
                print("median at a heavy atom after {:d} steps".format(it),
                      flush=True)
            return MedianResult(z, Subtree.single(T, z), Subtree.whole(T),
                                m_z, m)
        k = int(numpy.argmax(M))
        assert M[k] > 2 * third, "median walk lost its heavy branch"
        ahead = T.ahead_on_edge(z, k, nu.points)
        s = min(float(ahead.min()), T.room_in_branch(z, k))
        if verbose:
            print("step {:d}: branch {:d} carries {:.4g}, move {:.4g}".format(
                it, k, M[k], s), flush=True)
        z = T.step(z, k, s)
    raise RuntimeError(
        "median walk did not stop in {:d} steps".format(max_iter))
