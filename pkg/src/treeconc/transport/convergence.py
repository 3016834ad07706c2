"""convergence of epsilon-net coarsenings
"""
from typing import Sequence

import pandas

from ..location import tree_barycenter, verify_sturm
from ..measures import TreeMeasure, coarsen
from .w1 import w1_tree


def coarsen_sequence(nu: TreeMeasure, eps_list: Sequence[float],
                     verbose: bool = False) -> pandas.DataFrame:
    """coarsen_sequence Coarsen `nu` at each radius and measure how far the
    result and its center of mass moved.

    Args:
        nu (TreeMeasure): the measure
        eps_list (Sequence[float]): net radii, typically decreasing
        verbose (bool, optional): print one line per radius.
            Defaults to False.

    Returns:
        pandas.DataFrame: columns eps, atoms, w1, w1_bound (eps * m),
            barycenter_shift (distance between the centers of mass),
            shift_bound (w1 / m, the contraction bound), sturm (largest
            imbalance of the coarse measure at its center) and
            sturm_original (the original measure at the coarse center)
    """
    T = nu.tree
    base = tree_barycenter(T, nu)
    rows = []
    for eps in eps_list:
        coarse = coarsen(nu, eps)
        w = w1_tree(T, coarse, nu)
        bc = tree_barycenter(T, coarse)
        shift = T.distance(base.point, bc.point)
        rows.append({
            "eps": float(eps),
            "atoms": len(coarse),
            "w1": w,
            "w1_bound": float(eps) * nu.m,
            "barycenter_shift": shift,
            "shift_bound": w / nu.m,
            "sturm": verify_sturm(T, coarse, bc.point),
            "sturm_original": verify_sturm(T, nu, bc.point),
        })
        if verbose:
            print("eps {:.4g}: {:d} atoms, w1 {:.4g}, shift {:.4g}".format(
                eps, len(coarse), w, shift), flush=True)
    return pandas.DataFrame(rows)
