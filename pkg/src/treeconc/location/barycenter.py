"""centers of mass of atomic measures on trees and in euclidean space

On a tree the center of mass is the unique minimizer of
`F(x) = sum_y w_y d(x, y)^2`. It is characterized by the directional
condition: for every component `C` of the tree minus `z`, the imbalance

    c_{z,C} = sum_{y in C} w_y d(z, y) - sum_{y not in C} w_y d(z, y)

is non-positive. The walk below moves into the (unique) component with
positive imbalance. Along the first edge of that branch the imbalance
drops by exactly `m` per unit of arc length until an atom or the edge end
is passed, so the step `min(G / m, next event)` lands either on the
minimizer or on the next event.
"""
import dataclasses
from typing import Optional, Union

import numpy

from .._util import default_rng
from ..measures import LineMeasure, TreeMeasure
from ..rtree import Subtree, Tree, TreePoint, components_at
from ..typing import FloatArray


@dataclasses.dataclass
class BarycenterResult:
    point: TreePoint
    objective: float
    max_violation: float
    iterations: int = 0

    def to_json(self, tree: Tree) -> dict:
        return {
            "point": tree.point_json(self.point),
            "objective": float(self.objective),
            "max_violation": float(self.max_violation),
            "iterations": int(self.iterations),
        }


def imbalances(T: Tree, nu: TreeMeasure, z: TreePoint) -> FloatArray:
    """imbalances Directional imbalance into every branch at `z`.

    Entry `k` belongs to branch `k` of `Tree.branch_edges(z)`. Atoms at `z`
    contribute nothing.

    Returns:
        FloatArray: one value per branch (empty for the one-vertex tree)
    """
    z = T.validate_point(z)
    nb = T.n_branches(z)
    wd = nu.masses * nu.distances_from(z)
    labels = T.branch_labels(z, nu.points)
    off = labels >= 0
    inside = numpy.bincount(labels[off], weights=wd[off], minlength=nb)
    return 2.0 * inside - wd.sum()


def directional_imbalance(T: Tree, nu: TreeMeasure, z: TreePoint,
                          C: Union[Subtree, int]) -> float:
    """directional_imbalance Imbalance `c_{z,C}(nu)` of one component.

    Args:
        T (Tree): the tree
        nu (TreeMeasure): the measure
        z (TreePoint): base point
        C (Subtree or int): closure of a component of T minus {z} (as
            returned by `components_at`), or its branch index

    Raises:
        ValueError: `C` is not a component at `z`

    Returns:
        float
    """
    z = T.validate_point(z)
    G = imbalances(T, nu, z)
    if isinstance(C, (int, numpy.integer)):
        if C < 0 or C >= max(len(G), 1):
            raise ValueError("no branch {} at this point".format(C))
        return float(G[C]) if len(G) else 0.0
    for k, comp in enumerate(components_at(T, z)):
        if comp.same_as(C):
            return float(G[k]) if len(G) else 0.0
    raise ValueError("subtree is not a component at the given point")


def verify_sturm(T: Tree, nu: TreeMeasure, z: TreePoint) -> float:
    """verify_sturm Largest directional imbalance at `z` (<= 0 exactly at
    the center of mass)."""
    G = imbalances(T, nu, z)
    return float(G.max()) if len(G) else 0.0


def objective(T: Tree, nu: TreeMeasure, z: TreePoint) -> float:
    d = nu.distances_from(T.validate_point(z))
    return float(nu.masses @ d ** 2)


def tree_barycenter(T: Tree, nu: TreeMeasure, rtol: float = 1e-9,
                    max_iter: int = 0, verbose: bool = False
                    ) -> BarycenterResult:
    """tree_barycenter Center of mass of `nu` by a walk over event points.

    Args:
        T (Tree): the tree
        nu (TreeMeasure): the measure
        rtol (float, optional): stop once every imbalance is at most
            `rtol * m * diam(support)`. Defaults to 1e-9.
        max_iter (int, optional): iteration guard, 0 derives one from the
            instance size. Defaults to 0.
        verbose (bool, optional): print the walk. Defaults to False.

    Raises:
        ValueError: `nu` lives on another tree
        RuntimeError: the walk did not certify within `max_iter` steps

    Returns:
        BarycenterResult
    """
    if nu.tree is not T:
        raise ValueError("measure lives on a different tree")
    m = nu.m
    tol = rtol * m * nu.diameter()
    if max_iter <= 0:
        max_iter = 4 * (T.n_vertices + len(nu)) + 16
    z = nu.points[int(numpy.argmax(nu.masses))]
    for it in range(max_iter):
        G = imbalances(T, nu, z)
        if len(G) == 0 or G.max() <= tol:
            if verbose:
                print("barycenter certified after {:d} steps".format(it),
                      flush=True)
            return BarycenterResult(z, objective(T, nu, z),
                                    float(G.max()) if len(G) else 0.0, it)
        k = int(numpy.argmax(G))
        ahead = T.ahead_on_edge(z, k, nu.points)
        s = min(float(G[k]) / m, float(ahead.min()),
                T.room_in_branch(z, k))
        if verbose:
            print("step {:d}: branch {:d}, imbalance {:.4g}, move {:.4g}"
                  .format(it, k, G[k], s), flush=True)
        z = T.step(z, k, s)
    raise RuntimeError(
        "barycenter walk did not converge in {:d} steps".format(max_iter))


def real_barycenter(nu: LineMeasure) -> FloatArray:
    """real_barycenter Mass-weighted mean of the atom positions.

    Returns:
        FloatArray: point of R^d (shape `(d,)`)
    """
    return (nu.masses @ nu.positions) / nu.m


def barycenter_gap(T: Tree, nu: TreeMeasure, z: TreePoint,
                   probes: int = 100,
                   seed: Optional[int] = None) -> float:
    """barycenter_gap Largest `F(z) - F(q)` over random probe points `q`.

    Non-positive (up to rounding) when `z` minimizes `F`.
    """
    rng = default_rng(seed)
    qs = [T.random_point(rng) for _ in range(probes)]
    qs.extend(nu.points)
    Fz = objective(T, nu, z)
    Dq = T.distance_matrix(qs, nu.points)
    Fq = (Dq ** 2) @ nu.masses
    return float((Fz - Fq).max())
