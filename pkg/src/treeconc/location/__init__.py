"""location estimators on trees: median, center of mass and the signed
distance from the center of mass
"""
from .barycenter import BarycenterResult, imbalances, directional_imbalance
from .barycenter import verify_sturm, tree_barycenter, real_barycenter
from .barycenter import objective, barycenter_gap
from .median import MedianResult, tree_median, branch_masses
from .phi import PhiFunction, phi_nu

__all__ = [
    "BarycenterResult", "imbalances", "directional_imbalance",
    "verify_sturm", "tree_barycenter", "real_barycenter",
    "objective", "barycenter_gap",
    "MedianResult", "tree_median", "branch_masses",
    "PhiFunction", "phi_nu",
]
