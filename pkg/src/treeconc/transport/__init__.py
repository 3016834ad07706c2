"""Wasserstein-1 transport on trees and on the line
"""
from .w1 import TransportPlan, w1_tree, w1_line, w1_oracle, w1_tree_oracle
from .convergence import coarsen_sequence

__all__ = [
    "TransportPlan", "w1_tree", "w1_line", "w1_oracle", "w1_tree_oracle",
    "coarsen_sequence",
]
