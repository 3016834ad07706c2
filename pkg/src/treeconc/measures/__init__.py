"""finite metric measure spaces, atomic measures and their functionals
"""
from .measure import AtomicMeasure, TreeMeasure, LineMeasure
from .space import MMSpace, LipschitzFunction, LipschitzTreeMap
from .space import lipschitz_violation
from .functional import vp, partial_diameter, separation, separation_lower
from .functional import central_radius, ball_mass, pushforward, coarsen
from .functional import window_diameter

__all__ = [
    "AtomicMeasure", "TreeMeasure", "LineMeasure",
    "MMSpace", "LipschitzFunction", "LipschitzTreeMap",
    "lipschitz_violation",
    "vp", "partial_diameter", "separation", "separation_lower",
    "central_radius", "ball_mass", "pushforward", "coarsen",
    "window_diameter",
]
