import warnings

import numpy
import pytest
from hypothesis import given, settings

from treeconc.location import (
    barycenter_gap, directional_imbalance, imbalances, phi_nu, real_barycenter,
    tree_barycenter, tree_median, verify_sturm
)
from treeconc.measures import LineMeasure, TreeMeasure, coarsen
from treeconc.rtree import (
    Subtree, Tree, components_at, metric_projection, spanning_subtree
)

from conftest import random_instance, seeds


def _scale(nu: TreeMeasure) -> float:
    return nu.m * max(nu.diameter(), 1.0)


## directional imbalance
def test_imbalance_examples(star3, star_thirds):
    T, nu = star3, star_thirds
    center = T.vertex(0)
    for C in components_at(T, center):
        assert directional_imbalance(T, nu, center, C) == \
            pytest.approx(-1 / 3)
    leaf = T.vertex(1)
    whole = components_at(T, leaf)[0]
    assert directional_imbalance(T, nu, leaf, whole) == pytest.approx(4 / 3)
    assert directional_imbalance(T, nu, leaf, 0) == pytest.approx(4 / 3)
    point = TreeMeasure(T, [center], [2.0])
    assert numpy.all(imbalances(T, point, center) == 0.0)


def test_imbalance_rejects_foreign_subtree(star3, star_thirds):
    with pytest.raises(ValueError):
        directional_imbalance(star3, star_thirds, star3.vertex(0),
                              Subtree.whole(star3))
    with pytest.raises(ValueError):
        directional_imbalance(star3, star_thirds, star3.vertex(0), 5)


## center of mass
def test_barycenter_examples(star3, star_thirds, unit_edge):
    res = tree_barycenter(star3, star_thirds)
    assert res.point == star3.vertex(0)
    assert res.max_violation == pytest.approx(-1 / 3)

    T = unit_edge
    nu = TreeMeasure(T, [T.vertex(0), T.vertex(1)], [1.0, 3.0])
    res = tree_barycenter(T, nu)
    assert T.distance(T.vertex(0), res.point) == pytest.approx(0.75)
    # F(t) = t^2 + 3 (1 - t)^2 at t = 3/4
    assert res.objective == pytest.approx(0.75)

    single = TreeMeasure(star3, [star3.point(1, 0.4)], [2.0])
    res = tree_barycenter(star3, single)
    assert res.point == single.points[0]
    assert res.objective == 0.0


def test_barycenter_rejects_other_tree(star3, star_thirds):
    with pytest.raises(ValueError):
        tree_barycenter(Tree.star([1.0, 1.0, 1.0]), star_thirds)


def test_verify_sturm_examples(star3, star_thirds):
    assert verify_sturm(star3, star_thirds, star3.vertex(1)) == \
        pytest.approx(4 / 3)
    res = tree_barycenter(star3, star_thirds)
    assert verify_sturm(star3, star_thirds, res.point) <= 0.0
    point = TreeMeasure(star3, [star3.vertex(2)], [1.0])
    assert verify_sturm(star3, point, star3.vertex(2)) == 0.0


def test_real_barycenter_examples():
    assert real_barycenter(LineMeasure([0.0, 3.0], [1.0, 1.0]))[0] == 1.5
    n = 10
    pf = LineMeasure([0.0, float(n)], [1 - 1 / n, 1 / n])
    assert real_barycenter(pf)[0] == pytest.approx(1.0)
    assert numpy.allclose(
        real_barycenter(LineMeasure([[1.0, -2.0]], [0.3])), [1.0, -2.0])


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_barycenter_certificates(seed):
    T, nu, rng = random_instance(seed, max_edges=20, max_atoms=12)
    res = tree_barycenter(T, nu)
    scale = _scale(nu)
    assert res.max_violation <= 1e-9 * scale
    assert verify_sturm(T, nu, res.point) <= 1e-9 * scale
    assert barycenter_gap(T, nu, res.point, probes=100, seed=seed) <= \
        1e-9 * nu.m * max(nu.diameter(), 1.0) ** 2
    hull = spanning_subtree(T, nu.points)
    proj = metric_projection(T, hull, res.point)
    assert T.distance(proj, res.point) <= 1e-9


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_barycenter_of_coarsenings(seed):
    T, nu, rng = random_instance(seed, max_edges=20, max_atoms=12)
    for eps in (1.0, 0.5, 0.1):
        coarse = coarsen(nu, eps)
        res = tree_barycenter(T, coarse)
        assert verify_sturm(T, coarse, res.point) <= 1e-9 * _scale(coarse)


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_barycenter_on_path_matches_line(seed):
    rng = numpy.random.default_rng(seed)
    lengths = rng.uniform(0.1, 2.0, size=int(rng.integers(1, 8)))
    T = Tree.path(lengths)
    k = int(rng.integers(1, 8))
    nu = TreeMeasure.from_points(T, [T.random_point(rng) for _ in range(k)],
                                 rng.uniform(0.1, 1.0, size=k))
    root = T.vertex(0)
    x = T.distance_matrix([root], nu.points)[0]
    line = real_barycenter(LineMeasure(x, nu.masses))[0]
    res = tree_barycenter(T, nu)
    assert T.distance(root, res.point) == \
        pytest.approx(line, abs=1e-8 * max(T.diameter(), 1.0))


## median
def _check_median(T, nu, med):
    m = nu.m
    assert med.mass_a >= m / 3 - 1e-12 * m
    assert med.mass_b >= m / 3 - 1e-12 * m
    assert med.part_a.contains(med.point) and med.part_b.contains(med.point)
    inside = numpy.array([med.part_a.contains(p) or med.part_b.contains(p)
                          for p in nu.points])
    assert inside.all()
    # the recorded masses are those of the parts
    mass_a = sum(w for p, w in zip(nu.points, nu.masses)
                 if med.part_a.contains(p))
    mass_b = sum(w for p, w in zip(nu.points, nu.masses)
                 if med.part_b.contains(p))
    assert mass_a == pytest.approx(med.mass_a)
    assert mass_b == pytest.approx(med.mass_b)


def test_median_examples(star3, star_thirds, unit_edge):
    med = tree_median(star3, star_thirds)
    assert med.point == star3.vertex(0)
    assert sorted([med.mass_a, med.mass_b]) == \
        pytest.approx([1 / 3, 2 / 3])
    _check_median(star3, star_thirds, med)

    T = unit_edge
    nu = TreeMeasure(T, [T.vertex(0), T.vertex(1)], [0.9, 0.1])
    med = tree_median(T, nu)
    assert med.point == T.vertex(0)
    _check_median(T, nu, med)

    P = Tree.path([1.0, 1.0, 1.0])
    nu = TreeMeasure(P, [P.vertex(v) for v in range(4)], numpy.full(4, 0.25))
    med = tree_median(P, nu)
    assert 1.0 <= P.distance(P.vertex(0), med.point) <= 2.0
    _check_median(P, nu, med)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_median_certificate(seed):
    T, nu, rng = random_instance(seed, max_edges=20, max_atoms=12)
    _check_median(T, nu, tree_median(T, nu))


## signed distance from the center of mass
def test_phi_examples(star3):
    T = star3
    nu = TreeMeasure(T, [T.vertex(1), T.vertex(2), T.vertex(3)],
                     [0.7, 0.2, 0.1])
    bary = tree_barycenter(T, nu)
    med = tree_median(T, nu)
    phi = phi_nu(T, nu, med, bary)
    assert phi(bary.point) == 0.0
    assert phi(med.point) == pytest.approx(T.distance(bary.point, med.point))
    assert numpy.sum(phi.values > 0) == 1
    assert numpy.sum(phi.values < 0) == 2
    phi.as_lipschitz()


def test_phi_when_median_is_the_center(star3, star_thirds):
    bary = tree_barycenter(star3, star_thirds)
    med = tree_median(star3, star_thirds)
    with pytest.warns(UserWarning):
        phi = phi_nu(star3, star_thirds, med, bary)
    assert phi.ambiguous
    forced = phi_nu(star3, star_thirds, med, bary, branch=2)
    assert not forced.ambiguous
    assert forced(star3.vertex(3)) == 1.0
    assert forced(star3.vertex(1)) == -1.0
    with pytest.raises(ValueError):
        phi_nu(star3, star_thirds, med, bary, branch=3)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_phi_is_signed_distance(seed):
    T, nu, rng = random_instance(seed, max_edges=20, max_atoms=12)
    bary = tree_barycenter(T, nu)
    med = tree_median(T, nu)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        phi = phi_nu(T, nu, med, bary)
    d = T.distance_matrix([bary.point], nu.points)[0]
    assert numpy.array_equal(numpy.abs(phi.values), d)
    f = phi.as_lipschitz()
    assert f.values.shape == (len(nu),)
    # the mean of phi_* nu is never positive
    pf = phi.pushforward()
    assert real_barycenter(pf)[0] <= 1e-8 * max(nu.diameter(), 1.0)
