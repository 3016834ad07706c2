"""geometry of finite simplicial trees: distances, geodesics, components,
subtrees, projections and ball intersections
"""
from .tree import Tree, TreePoint, tree_distance, geodesic
from .subtree import Subtree, ball_subtree, subtree_intersection
from .subtree import metric_projection, spanning_subtree, components_at

__all__ = [
    "Tree", "TreePoint", "tree_distance", "geodesic",
    "Subtree", "ball_subtree", "subtree_intersection",
    "metric_projection", "spanning_subtree", "components_at",
]
