"""observable diameter, central radius and Lp-variation with screen R,
1-Lipschitz witnesses and random 1-Lipschitz maps into trees
"""
from .estimators import BoundEstimate, obsdiam_R, obscrad_R, obslpvar_R
from .estimators import diameter_objective, central_radius_objective
from .estimators import variation_objective
from .exact import ordering_oracle_obsdiam, vertex_oracle_vp, spanning_trees
from .sampler import sample_lipschitz_tree_map, sample_lipschitz_function
from .witness import mcshane_extension, mcshane_values, lipschitz_repair
from .witness import coordinate_ascent, witness_family, best_witness

__all__ = [
    "BoundEstimate", "obsdiam_R", "obscrad_R", "obslpvar_R",
    "diameter_objective", "central_radius_objective", "variation_objective",
    "ordering_oracle_obsdiam", "vertex_oracle_vp", "spanning_trees",
    "sample_lipschitz_tree_map", "sample_lipschitz_function",
    "mcshane_extension", "mcshane_values", "lipschitz_repair",
    "coordinate_ascent", "witness_family", "best_witness",
]
