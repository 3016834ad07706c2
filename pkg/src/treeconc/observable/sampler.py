"""random 1-Lipschitz maps from a finite mm-space into a tree
"""
from .._util import default_rng
from ..measures import LipschitzTreeMap, MMSpace
from ..rtree import Tree, ball_subtree, metric_projection, subtree_intersection
from .witness import mcshane_extension, random_boundary


def sample_lipschitz_tree_map(X: MMSpace, T: Tree, seed=None,
                              tol: float = 1e-9) -> LipschitzTreeMap:
    """sample_lipschitz_tree_map Place the points of `X` one at a time.

    The first point goes to a uniform random point of `T`. Every later
    point may go anywhere in the intersection of the balls
    `B(f(x_j), d(x_k, x_j))` over the points already placed; these balls
    intersect pairwise by the triangle inequality, so by the Helly property
    of subtrees the intersection is nonempty. The image is the metric
    projection of a fresh random point onto it.

    Args:
        X (MMSpace): domain
        T (Tree): target tree
        seed (optional): random seed or generator. Defaults to None.
        tol (float, optional): Lipschitz validation tolerance.
            Defaults to 1e-9.

    Raises:
        RuntimeError: the ball intersection came out empty

    Returns:
        LipschitzTreeMap
    """
    rng = default_rng(seed)
    D = X.dist
    images = [None] * X.n
    placed = []
    for k in rng.permutation(X.n):
        k = int(k)
        probe = T.random_point(rng)
        if not placed:
            images[k] = probe
            placed.append(k)
            continue
        region = None
        for j in placed:
            r = float(D[k, j])
            ball = ball_subtree(T, images[j], r + T.tol * max(1.0, r))
            region = ball if region is None else \
                subtree_intersection(T, region, ball)
            if region is None:
                raise RuntimeError(
                    "ball intersection is empty while placing point "
                    "{}".format(X.ids[k]))
        images[k] = metric_projection(T, region, probe)
        placed.append(k)
    return LipschitzTreeMap(X, T, images, tol=tol)


def sample_lipschitz_function(X: MMSpace, seed=None,
                              tol: float = 1e-9):
    """sample_lipschitz_function Random 1-Lipschitz function `X -> R`
    (McShane extension of random boundary data)."""
    rng = default_rng(seed)
    A, f_A = random_boundary(X.dist, rng)
    return mcshane_extension(X, A, f_A, tol=tol)

