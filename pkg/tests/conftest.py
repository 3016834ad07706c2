import numpy
import pytest
from hypothesis import strategies as st

from treeconc.harness import random_tree, random_tree_measure
from treeconc.measures import MMSpace, TreeMeasure
from treeconc.rtree import Tree

# seeds drive the instance generators, so hypothesis shrinks towards small
# seeds instead of shrinking tree structure
seeds = st.integers(min_value=0, max_value=2 ** 31 - 1)


def random_instance(seed: int, max_edges: int = 12, max_atoms: int = 8):
    rng = numpy.random.default_rng(seed)
    T = random_tree(int(rng.integers(0, max_edges + 1)), rng)
    nu = random_tree_measure(T, int(rng.integers(1, max_atoms + 1)), rng)
    return T, nu, rng


def random_space(seed: int, max_points: int = 6) -> MMSpace:
    """euclidean points in general position as a finite mm-space"""
    rng = numpy.random.default_rng(seed)
    n = int(rng.integers(1, max_points + 1))
    pts = rng.uniform(0, 1, size=(n, 2))
    D = numpy.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    # keep distinct points apart
    D = D + 0.05 * (1 - numpy.eye(n))
    return MMSpace(D, rng.uniform(0.1, 1.0, size=n))


@pytest.fixture
def path_abc():
    return Tree(["a", "b", "c"], [("a", "b", 1.0), ("b", "c", 2.0)])


@pytest.fixture
def star3():
    return Tree.star([1.0, 1.0, 1.0])


@pytest.fixture
def star_thirds(star3):
    pts = [star3.vertex(i) for i in (1, 2, 3)]
    return TreeMeasure(star3, pts, [1 / 3, 1 / 3, 1 / 3])


@pytest.fixture
def unit_edge():
    return Tree.path([1.0])


@pytest.fixture
def equilateral():
    D = numpy.ones((3, 3)) - numpy.eye(3)
    return MMSpace(D, [1.0, 1.0, 1.0])
