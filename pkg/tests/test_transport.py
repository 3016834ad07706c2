import numpy
import pytest
from hypothesis import given, settings

from treeconc.harness import random_tree, random_tree_measure
from treeconc.location import tree_barycenter
from treeconc.measures import LineMeasure, TreeMeasure, coarsen
from treeconc.rtree import Tree
from treeconc.transport import (
    coarsen_sequence, w1_line, w1_oracle, w1_tree, w1_tree_oracle
)

from conftest import random_instance, seeds


def _pair(seed: int, max_edges: int = 15, max_atoms: int = 10):
    rng = numpy.random.default_rng(seed)
    T = random_tree(int(rng.integers(1, max_edges + 1)), rng)
    mu = random_tree_measure(T, int(rng.integers(1, max_atoms + 1)), rng)
    nu = random_tree_measure(T, int(rng.integers(1, max_atoms + 1)), rng)
    # same total mass
    nu = TreeMeasure(T, nu.points, nu.masses * (mu.m / nu.m))
    return T, mu, nu, rng


## closed forms
def test_w1_tree_examples(star3, star_thirds):
    assert w1_tree(star3, star_thirds, star_thirds) == 0.0
    center = TreeMeasure(star3, [star3.vertex(0)], [1.0])
    assert w1_tree(star3, center, star_thirds) == pytest.approx(1.0)
    T = Tree.path([2.5, 1.0])
    a = TreeMeasure(T, [T.vertex(0)], [2.0])
    b = TreeMeasure(T, [T.vertex(2)], [2.0])
    assert w1_tree(T, a, b) == pytest.approx(7.0)
    c = TreeMeasure(T, [T.point(0, 1.0)], [2.0])
    assert w1_tree(T, a, c) == pytest.approx(2.0)


def test_w1_tree_rejects_unequal_mass(star3, star_thirds):
    heavy = TreeMeasure(star3, [star3.vertex(0)], [2.0])
    with pytest.raises(ValueError):
        w1_tree(star3, heavy, star_thirds)


def test_w1_line_examples():
    a = LineMeasure([0.0, 1.0], [0.5, 0.5])
    b = LineMeasure([0.5], [1.0])
    assert w1_line(a, b) == pytest.approx(0.5)
    shifted = LineMeasure(a.positions[:, 0] + 3.0, a.masses)
    assert w1_line(a, shifted) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        w1_line(LineMeasure([[0.0, 1.0]], [1.0]), LineMeasure([[0.0, 1.0]],
                                                              [1.0]))
    with pytest.raises(ValueError):
        w1_line(a, LineMeasure([0.5], [2.0]))


## linear programming oracle
def test_w1_oracle_examples():
    cost, plan = w1_oracle([[0.0, 1.0], [1.0, 0.0]], [0.3, 0.7], [0.3, 0.7])
    assert cost == pytest.approx(0.0, abs=1e-12)
    cost, plan = w1_oracle([[2.0, 1.0], [1.0, 2.0]], [1.0, 1.0], [1.0, 1.0])
    assert cost == pytest.approx(2.0)
    P = plan.as_matrix(2, 2)
    assert numpy.allclose(P, [[0.0, 1.0], [1.0, 0.0]])
    assert plan.to_json()["cost"] == pytest.approx(2.0)
    with pytest.raises(ValueError):
        w1_oracle([[0.0, 1.0]], [1.0], [0.5, 0.4])
    with pytest.raises(ValueError):
        w1_oracle([[0.0]], [1.0, 1.0], [2.0])


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_edge_cut_matches_oracle(seed):
    T, mu, nu, rng = _pair(seed)
    w = w1_tree(T, mu, nu)
    exact, plan = w1_tree_oracle(T, mu, nu)
    assert w == pytest.approx(exact, abs=1e-9 * max(1.0, exact))
    P = plan.as_matrix(len(mu), len(nu))
    assert numpy.allclose(P.sum(axis=1), mu.masses)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_w1_line_matches_oracle(seed):
    rng = numpy.random.default_rng(seed)
    k1, k2 = (int(k) for k in rng.integers(1, 10, size=2))
    a = rng.uniform(0.1, 1.0, size=k1)
    b = rng.uniform(0.1, 1.0, size=k2)
    b *= a.sum() / b.sum()
    mu = LineMeasure(rng.normal(size=k1), a)
    nu = LineMeasure(rng.normal(size=k2), b)
    D = numpy.abs(mu.positions[:, 0][:, None] - nu.positions[:, 0][None])
    exact, _ = w1_oracle(D, mu.masses, nu.masses)
    assert w1_line(mu, nu) == pytest.approx(exact, abs=1e-9)


## metric properties
@settings(max_examples=50, deadline=None)
@given(seeds)
def test_w1_is_a_metric(seed):
    T, mu, nu, rng = _pair(seed)
    rho = random_tree_measure(T, int(rng.integers(1, 10)), rng)
    rho = TreeMeasure(T, rho.points, rho.masses * (mu.m / rho.m))
    assert w1_tree(T, mu, mu) == pytest.approx(0.0, abs=1e-12)
    assert w1_tree(T, mu, nu) == pytest.approx(w1_tree(T, nu, mu))
    assert w1_tree(T, mu, nu) <= \
        w1_tree(T, mu, rho) + w1_tree(T, rho, nu) + 1e-9


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_barycenter_contraction(seed):
    T, mu, nu, rng = _pair(seed)
    w = w1_tree(T, mu, nu)
    shift = T.distance(tree_barycenter(T, mu).point,
                       tree_barycenter(T, nu).point)
    assert shift <= w / mu.m + 1e-8 * max(1.0, T.diameter())


## coarsening
@settings(max_examples=40, deadline=None)
@given(seeds)
def test_coarsening_is_close_in_w1(seed):
    T, nu, rng = random_instance(seed, max_edges=20, max_atoms=12)
    for eps in (2.0, 0.5, 0.1):
        assert w1_tree(T, coarsen(nu, eps), nu) <= eps * nu.m + 1e-9


def test_coarsen_sequence():
    T, nu, rng = random_instance(3, max_edges=20, max_atoms=12)
    frame = coarsen_sequence(nu, [1.0, 0.5, 0.25, 0.01])
    assert list(frame.columns) == [
        "eps", "atoms", "w1", "w1_bound", "barycenter_shift", "shift_bound",
        "sturm", "sturm_original"]
    assert len(frame) == 4
    assert (frame["w1"] <= frame["w1_bound"] + 1e-9).all()
    assert (frame["barycenter_shift"] <=
            frame["shift_bound"] + 1e-8 * max(1.0, T.diameter())).all()
    assert frame["atoms"].iloc[-1] <= len(nu)
