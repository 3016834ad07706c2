"""instance generators, inequality suites and family decay reports
"""
from .generators import InstanceSpec, Instance, generate, generate_many
from .generators import GENERATORS, hypercube, hypercube_separation
from .generators import two_point, constant, random_tree, random_tree_measure
from .generators import euclidean_cloud
from .checks import CheckRecord, CheckReport, COLUMNS
from .checks import check_measure_inequalities, check_map_inequalities
from .checks import check_euclidean_inequalities
from .checks import check_space_inequalities, variation_constant
from .levy import FAMILIES, LEVY_COLUMNS, levy_report, write_levy_svg

__all__ = [
    "InstanceSpec", "Instance", "generate", "generate_many",
    "GENERATORS", "hypercube", "hypercube_separation",
    "two_point", "constant", "random_tree", "random_tree_measure",
    "euclidean_cloud",
    "CheckRecord", "CheckReport", "COLUMNS",
    "check_measure_inequalities", "check_map_inequalities",
    "check_euclidean_inequalities",
    "check_space_inequalities", "variation_constant",
    "FAMILIES", "LEVY_COLUMNS", "levy_report", "write_levy_svg",
]
