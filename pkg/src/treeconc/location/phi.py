"""signed distance from the center of mass

`phi(w) = +d(c, w)` on the closed component at the center of mass `c` that
holds the median and `-d(c, w)` elsewhere. It is 1-Lipschitz on the whole
tree since two points on different sides see each other through `c`.
"""
import warnings
from typing import Optional

import numpy

from ..measures import LineMeasure, LipschitzFunction, TreeMeasure
from ..rtree import Tree, TreePoint
from ..typing import FloatArray
from .barycenter import BarycenterResult
from .median import MedianResult, branch_masses


class PhiFunction(object):
    """PhiFunction Signed distance from the center of mass of `nu`.

    Args:
        tree (Tree): the tree
        nu (TreeMeasure): the measure the function was built for
        center (TreePoint): center of mass
        branch (int): branch at `center` taken as the positive side, -1
            when `center` has no branches
        ambiguous (bool): the median sat at the center, so `branch` was
            chosen by mass rather than forced
    """

    def __init__(self, tree: Tree, nu: TreeMeasure, center: TreePoint,
                 branch: int, ambiguous: bool):
        self.tree = tree
        self.nu = nu
        self.center = center
        self.branch = int(branch)
        self.ambiguous = bool(ambiguous)
        self.values = self.evaluate(nu.points)

    def evaluate(self, points) -> FloatArray:
        points = list(points)
        d = self.tree.distance_matrix([self.center], points)[0]
        if self.branch < 0:
            return numpy.zeros(len(points))
        labels = self.tree.branch_labels(self.center, points)
        return numpy.where(labels == self.branch, d, -d)

    def __call__(self, p: TreePoint) -> float:
        return float(self.evaluate([self.tree.validate_point(p)])[0])

    def as_lipschitz(self, tol: float = 1e-9) -> LipschitzFunction:
        """as_lipschitz Values on the atoms as a validated function on the
        mm-space of the support."""
        return LipschitzFunction(self.nu.as_space(), self.values, tol=tol)

    def pushforward(self) -> LineMeasure:
        return LineMeasure.from_points(self.values, self.nu.masses)

    def to_json(self) -> dict:
        return {
            "center": self.tree.point_json(self.center),
            "branch": self.branch,
            "ambiguous": self.ambiguous,
            "values": self.values,
        }


def phi_nu(T: Tree, nu: TreeMeasure, med: MedianResult,
           bary: BarycenterResult,
           branch: Optional[int] = None) -> PhiFunction:
    """phi_nu Signed distance from `bary.point`, positive towards `med.point`.

    When the median coincides with the center of mass every component
    qualifies; the heaviest one (first on ties) is used and the result is
    flagged `ambiguous`.

    Args:
        T (Tree): the tree
        nu (TreeMeasure): the measure
        med (MedianResult): a median of `nu`
        bary (BarycenterResult): the center of mass of `nu`
        branch (int, optional): force this branch at the center as the
            positive side. Defaults to None.

    Raises:
        ValueError: `branch` does not exist at the center

    Returns:
        PhiFunction
    """
    c = T.validate_point(bary.point)
    nb = T.n_branches(c)
    if nb == 0:
        return PhiFunction(T, nu, c, -1, False)
    if branch is not None:
        if branch < 0 or branch >= nb:
            raise ValueError("no branch {} at the center".format(branch))
        return PhiFunction(T, nu, c, branch, False)
    k = int(T.branch_labels(c, [med.point])[0])
    if k >= 0:
        return PhiFunction(T, nu, c, k, False)
    M, _ = branch_masses(T, nu, c)
    k = int(numpy.argmax(M))
    warnings.warn("median coincides with the center of mass, positive side "
                  "picked by branch mass")
    return PhiFunction(T, nu, c, k, True)
