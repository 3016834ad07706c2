import math

import numpy
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treeconc.measures import (
    LineMeasure, LipschitzFunction, LipschitzTreeMap, MMSpace, TreeMeasure,
    ball_mass, central_radius, coarsen, partial_diameter, pushforward,
    separation, vp
)
from treeconc.measures._subset import (
    exhaustive_partial_diameter, exhaustive_separation
)
from treeconc.observable import sample_lipschitz_function
from treeconc.rtree import Tree

from conftest import random_instance, random_space, seeds


## types
def test_mmspace_validation():
    with pytest.raises(ValueError):
        MMSpace([[0.0, 1.0], [2.0, 0.0]], [1.0, 1.0])
    with pytest.raises(ValueError):
        MMSpace([[0.5, 1.0], [1.0, 0.0]], [1.0, 1.0])
    with pytest.raises(ValueError):
        MMSpace([[0.0, 0.0], [0.0, 0.0]], [1.0, 1.0])
    with pytest.raises(ValueError):
        MMSpace([[0, 1, 5], [1, 0, 1], [5, 1, 0]], [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        MMSpace([[0.0, 1.0], [1.0, 0.0]], [1.0, 0.0])
    with pytest.raises(ValueError):
        MMSpace(numpy.zeros((0, 0)), [])


def test_mmspace_json_round_trip():
    X = MMSpace([[0.0, 2.0], [2.0, 0.0]], [0.25, 0.75], ids=["x", "y"])
    Y = MMSpace.from_json({"dist": X.dist.tolist(),
                           "mass": X.masses.tolist(), "ids": X.ids})
    assert numpy.array_equal(X.dist, Y.dist)
    assert Y.ids == ["x", "y"]
    assert Y.m == 1.0


def test_tree_measure_rejects_repeated_points(unit_edge):
    p = unit_edge.point(0, 0.5)
    with pytest.raises(ValueError):
        TreeMeasure(unit_edge, [p, p], [1.0, 1.0])
    merged = TreeMeasure.from_points(unit_edge, [p, p], [1.0, 2.0])
    assert len(merged) == 1 and merged.m == 3.0


def test_lipschitz_function_validation(equilateral):
    LipschitzFunction(equilateral, [0.0, 1.0, 0.5])
    with pytest.raises(ValueError):
        LipschitzFunction(equilateral, [0.0, 1.5, 0.5])
    with pytest.raises(ValueError):
        LipschitzFunction(equilateral, [0.0, 1.0])


## vp
def test_vp_examples():
    single = LineMeasure([3.0], [2.0])
    assert vp(single, 1.0) == 0.0
    two = LineMeasure([0.0, 2.5], [1.0, 1.0])
    for p in (1.0, 2.0, 3.0):
        assert vp(two, p) == pytest.approx(2 ** (1 / p) * 2.5)
    halves = LineMeasure([0.0, 1.0], [0.5, 0.5])
    assert vp(halves, 2.0) == pytest.approx(1 / math.sqrt(2))
    with pytest.raises(ValueError):
        vp(two, 0.0)
    with pytest.warns(UserWarning):
        vp(two, 0.5)


## partial diameter
def test_partial_diameter_examples():
    line = LineMeasure(numpy.arange(10.0), numpy.full(10, 0.1))
    assert partial_diameter(line, 0.2) == pytest.approx(7.0)
    assert partial_diameter(line, 1.0) == 0.0
    assert partial_diameter(LineMeasure([1.0], [2.0]), 1.0) == 0.0
    with pytest.raises(ValueError):
        partial_diameter(line, -0.1)
    with pytest.raises(ValueError):
        partial_diameter(line, 1.5)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_tree_partial_diameter_is_exact(seed):
    T, nu, rng = random_instance(seed)
    D = nu.distance_matrix()
    for frac in (0.0, 0.1, 0.3, 0.5, 0.9):
        kappa = frac * nu.m
        expected = exhaustive_partial_diameter(D, nu.masses, nu.m - kappa,
                                               nu.m)
        assert partial_diameter(nu, kappa) == pytest.approx(expected,
                                                            abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_partial_diameter_milp_matches_enumeration(seed):
    X = random_space(seed)
    for frac in (0.1, 0.3, 0.6):
        kappa = frac * X.m
        assert partial_diameter(X, kappa, exact_limit=0) == \
            pytest.approx(partial_diameter(X, kappa), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_partial_diameter_monotone_and_below_crad(seed):
    T, nu, rng = random_instance(seed)
    c = nu.points[int(rng.integers(len(nu)))]
    previous = numpy.inf
    for frac in numpy.linspace(0, 0.95, 8):
        kappa = frac * nu.m
        pd = partial_diameter(nu, kappa)
        assert pd <= previous + 1e-12
        assert pd <= 2 * central_radius(nu, kappa, c) + 1e-9
        previous = pd


## separation
def test_separation_examples(equilateral):
    n = 10
    two_point = MMSpace([[0, n], [n, 0]], [1 - 1 / n, 1 / n])
    assert separation(two_point, 1 / n, 1 / n) == n
    assert separation(two_point, 0.2, 0.2) == 0.0
    collinear = LineMeasure([0.0, 1.0, 2.0, 3.0], numpy.full(4, 0.25))
    assert separation(collinear, 0.25, 0.25) == pytest.approx(3.0)
    assert separation(equilateral, 1.6, 1.6) == 0.0
    with pytest.raises(ValueError):
        separation(equilateral, -1.0, 1.0)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_separation_properties(seed):
    X = random_space(seed)
    m = X.m
    assert separation(X, 0.51 * m, 0.51 * m) == 0.0
    previous = numpy.inf
    for frac in (0.05, 0.15, 0.3, 0.45):
        k = frac * m
        sep = separation(X, k, k)
        assert sep == exhaustive_separation(X.dist, X.masses, k, k, m)
        assert sep == pytest.approx(separation(X, k, k, exact_limit=0),
                                    abs=1e-9)
        assert sep <= previous
        previous = sep


def test_separation_on_the_line_needs_split_runs():
    # B = {0, 10} around A = {5} is the only admissible pair
    nu = LineMeasure([0.0, 5.0, 10.0], [0.25, 0.5, 0.25])
    assert separation(nu, 0.5, 0.5) == pytest.approx(5.0)
    # 0 and 2 are linked through 1 at any threshold below 2
    nu = LineMeasure([0.0, 1.0, 2.0], [1.0, 1.0, 1.0])
    assert separation(nu, 1.0, 1.0) == pytest.approx(2.0)
    assert separation(nu, 1.0, 2.0) == pytest.approx(1.0)
    assert separation(nu, 2.0, 2.0) == 0.0


def test_separation_on_a_star_is_a_partition_problem(star3):
    pts = [star3.vertex(i) for i in (1, 2, 3)]
    nu = TreeMeasure(star3, pts, [3.0, 3.0, 4.0])
    # 3 + 3 against 4 is the only split and leaves one side below 5
    assert separation(nu, 5.0, 5.0) == 0.0
    assert separation(nu, 4.0, 4.0) == pytest.approx(2.0)
    assert separation(nu, 6.0, 4.0) == pytest.approx(2.0)
    assert separation(nu, 7.0, 3.0) == pytest.approx(2.0)
    assert separation(nu, 7.0, 4.0) == 0.0


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_line_separation_is_exact(seed):
    rng = numpy.random.default_rng(seed)
    k = int(rng.integers(1, 11))
    x = rng.choice(40, size=k, replace=False) / 4.0
    # integer masses make the levels hit exact subset sums
    nu = LineMeasure(x, rng.integers(1, 6, size=k).astype(float))
    m = nu.m
    D = nu.distance_matrix()
    for f1, f2 in ((0.1, 0.1), (0.2, 0.45), (0.35, 0.35), (0.5, 0.3)):
        k1, k2 = numpy.round(f1 * m), numpy.round(f2 * m)
        assert separation(nu, k1, k2) == \
            exhaustive_separation(D, nu.masses, k1, k2, m)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_tree_separation_is_exact(seed):
    T, nu, rng = random_instance(seed, max_edges=10, max_atoms=9)
    m = nu.m
    D = nu.distance_matrix()
    for f1, f2 in ((0.05, 0.05), (1 / 3, 0.1), (0.25, 0.4), (0.45, 0.45)):
        k1, k2 = f1 * m, f2 * m
        assert separation(nu, k1, k2) == \
            exhaustive_separation(D, nu.masses, k1, k2, m)


@settings(max_examples=5, deadline=None)
@given(seeds)
def test_separation_milp_matches_enumeration_on_larger_spaces(seed):
    rng = numpy.random.default_rng(seed)
    n = int(rng.integers(9, 13))
    pts = rng.uniform(0, 1, size=(n, 3))
    D = numpy.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
    X = MMSpace(D + 0.05 * (1 - numpy.eye(n)), rng.uniform(0.1, 1.0, size=n))
    m = X.m
    for f1, f2 in ((0.1, 0.1), (1 / 3, 0.15), (0.4, 0.4)):
        k1, k2 = f1 * m, f2 * m
        assert separation(X, k1, k2, exact_limit=0) == pytest.approx(
            exhaustive_separation(X.dist, X.masses, k1, k2, m), abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_separation_shrinks_under_lipschitz_maps(seed):
    X = random_space(seed)
    f = sample_lipschitz_function(X, seed=seed)
    pf = pushforward(X, f)
    for frac in (0.1, 0.25, 0.4):
        k = frac * X.m
        assert separation(pf, k, k) <= separation(X, k, k) + 1e-9
        assert separation(pf, X.m / 3, k / 2) <= \
            separation(X, X.m / 3, k / 2) + 1e-9


## central radius
def test_central_radius_examples():
    point = LineMeasure([2.0], [1.5])
    assert central_radius(point, 0.5, [2.0]) == 0.0
    n = 10
    pf = LineMeasure([0.0, float(n)], [1 - 1 / n, 1 / n])
    c = [1.0]
    assert ball_mass(pf, c, 0.5) == 0.0
    for kappa in (0.1, 0.3, 0.5, 0.85):
        assert central_radius(pf, kappa, c) == 1.0
    assert central_radius(pf, 0.05, c) == pytest.approx(9.0)
    assert central_radius(pf, 1.0, c) == 0.0


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(min_value=1, max_value=3))
def test_central_radius_below_variation(seed, d):
    rng = numpy.random.default_rng(seed)
    k = int(rng.integers(1, 12))
    nu = LineMeasure(rng.normal(size=(k, d)), rng.uniform(0.1, 1.0, size=k))
    m = nu.m
    mean = (nu.masses @ nu.positions) / m
    for frac in (0.05, 0.2, 0.5):
        kappa = frac * m
        r = central_radius(nu, kappa, mean)
        assert ball_mass(nu, mean, r) >= m - kappa - 1e-9
        for p in (1.0, 1.5, 2.0, 3.0):
            bound = vp(nu, p) / (m * kappa) ** (1 / p)
            assert r <= bound + 1e-9 * max(1.0, bound)
        bound = vp(nu, 2.0) / math.sqrt(2 * m * kappa)
        assert r <= bound + 1e-9 * max(1.0, bound)


def test_central_radius_in_the_plane():
    # an equilateral triangle of side 1 about its center
    pts = [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]]
    nu = LineMeasure(pts, [1.0, 1.0, 1.0])
    mean = (nu.masses @ nu.positions) / nu.m
    assert central_radius(nu, 0.5, mean) == pytest.approx(1 / math.sqrt(3))
    assert central_radius(nu, 3.0, mean) == 0.0
    # V_2^2 = 6 ordered pairs at distance 1, m k = 3 * 0.5
    assert vp(nu, 2.0) / math.sqrt(2 * 1.5) == pytest.approx(math.sqrt(2))


## push-forward and coarsening
def test_pushforward_examples(equilateral, star3):
    X = equilateral
    inj = pushforward(X, LipschitzFunction(X, [0.0, 1.0, 0.5]))
    assert sorted(inj.masses) == [1.0, 1.0, 1.0]
    assert inj.m == X.m
    const = pushforward(X, LipschitzFunction(X, numpy.zeros(3)))
    assert len(const) == 1 and const.masses[0] == 3.0
    f = LipschitzTreeMap(X, star3, [star3.vertex(0), star3.vertex(0),
                                    star3.vertex(1)])
    nu = pushforward(X, f)
    assert sorted(nu.masses) == [1.0, 2.0]
    other = MMSpace(X.dist, X.masses)
    with pytest.raises(ValueError):
        pushforward(other, f)


def test_pushforward_merges_values_exactly():
    X = MMSpace([[0, 1, 2], [1, 0, 1], [2, 1, 0]], [0.2, 0.3, 0.5])
    pf = pushforward(X, LipschitzFunction(X, [0.0, 1.0, 0.0]))
    assert dict(zip(pf.positions[:, 0], pf.masses)) == \
        pytest.approx({0.0: 0.7, 1.0: 0.3})


def test_coarsen_examples(unit_edge):
    T = unit_edge
    nu = TreeMeasure(T, [T.vertex(0), T.point(0, 0.5)], [1.0, 2.0])
    same = coarsen(nu, 0.1)
    assert same.points == nu.points
    assert numpy.array_equal(same.masses, nu.masses)
    merged = coarsen(nu, 1.0)
    assert len(merged) == 1 and merged.m == 3.0
    with pytest.raises(ValueError):
        coarsen(nu, 0.0)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_coarsen_moves_mass_within_eps(seed):
    T, nu, rng = random_instance(seed)
    eps = float(rng.uniform(0.05, 2.0))
    coarse = coarsen(nu, eps)
    assert coarse.m == pytest.approx(nu.m, rel=1e-12)
    D = T.distance_matrix(nu.points, coarse.points)
    assert numpy.all(D.min(axis=1) <= eps + 1e-12)
    if len(coarse) > 1:
        Dc = coarse.distance_matrix()
        assert Dc[~numpy.eye(len(coarse), dtype=bool)].min() > eps


def test_tree_measure_json(path_abc):
    T = path_abc
    nu = TreeMeasure.from_json(
        T, {"atoms": [["v:a", 0.5], [{"edge": ["b", "c"], "offset": 1.0},
                                      1.5]]})
    assert nu.m == 2.0
    assert nu.diameter() == pytest.approx(2.0)
    again = TreeMeasure.from_json(T, nu.to_json())
    assert again.points == nu.points
    with pytest.raises(ValueError):
        TreeMeasure.from_json(T, {"points": []})


def test_tree_measure_as_space(star_thirds):
    X = star_thirds.as_space()
    assert X.n == 3
    assert numpy.allclose(X.dist, 2 * (1 - numpy.eye(3)))
    assert X.m == pytest.approx(1.0)
    assert isinstance(star_thirds.tree, Tree)
