import numpy
import pandas
import pytest
from hypothesis import given, settings

from treeconc.config import DEFAULT
from treeconc.harness import (
    COLUMNS, CheckReport, InstanceSpec, LEVY_COLUMNS,
    check_euclidean_inequalities, check_map_inequalities,
    check_measure_inequalities, check_space_inequalities, constant,
    euclidean_cloud, generate, generate_many, hypercube, hypercube_separation,
    levy_report, two_point, variation_constant, write_levy_svg
)
from treeconc.harness.generators import path
from treeconc.measures import LineMeasure, separation
from treeconc.measures._subset import exhaustive_separation
from treeconc.observable import sample_lipschitz_tree_map

from conftest import random_instance, random_space, seeds

FAST = DEFAULT.light()


## generators
def test_two_point_and_constant():
    X = two_point(10)
    assert X.ids == ["x", "y"]
    assert X.dist[0, 1] == 10.0
    assert numpy.allclose(X.masses, [0.9, 0.1])
    with pytest.raises(ValueError):
        two_point(1)
    Y = constant(7)
    assert numpy.allclose(Y.masses, [0.5, 0.5])
    assert Y.dist[0, 1] == 1.0


def test_path_generator():
    T, nu = path(4)
    assert T.n_vertices == 4
    assert nu.m == pytest.approx(1.0)
    assert nu.diameter() == pytest.approx(3.0)


def test_hypercube_space():
    X = hypercube(3)
    assert X.n == 8
    assert X.m == pytest.approx(1.0)
    assert X.diameter() == 3.0
    assert X.dist[0, 7] == 3.0
    Y = hypercube(3, normalize="mean")
    assert Y.diameter() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        hypercube(0)
    with pytest.raises(ValueError):
        hypercube(3, normalize="max")


@pytest.mark.parametrize("n,expected", [(4, 0.75), (5, 0.6), (6, 2 / 3)])
def test_hypercube_separation_values(n, expected):
    assert hypercube_separation(n, 0.1, 0.1, normalize="mean") == \
        pytest.approx(expected)


@pytest.mark.parametrize("k", [0.1, 0.25, 0.4])
def test_hypercube_separation_matches_enumeration(k):
    X = hypercube(3)
    assert separation(X, k, k) == hypercube_separation(3, k, k)
    assert hypercube_separation(3, k, k) == \
        exhaustive_separation(X.dist, X.masses, k, k, X.m)
    assert hypercube_separation(3, 0.6, 0.6) == 0.0


def test_generate_is_deterministic():
    spec = InstanceSpec.parse("random_tree", ["edges=6", "atoms=5"], seed=11)
    a, b = generate(spec), generate(spec)
    assert numpy.array_equal(a.space.dist, b.space.dist)
    assert numpy.array_equal(a.space.masses, b.space.masses)
    assert a.tree is not None and a.measure is not None
    assert a.to_json()["spec"] == {"generator": "random_tree",
                                   "params": {"edges": 6, "atoms": 5},
                                   "seed": 11}
    many = generate_many(spec, 3)
    assert [inst.spec.seed for inst in many] == [11, 12, 13]
    assert "tree_edges" not in spec.params
    assert generate(spec.with_params(tree_edges=4)).target.n_edges == 4


def test_generate_rejects_bad_specs():
    with pytest.raises(ValueError):
        generate(InstanceSpec("no_such_generator"))
    with pytest.raises(ValueError):
        generate(InstanceSpec.parse("two_point", ["m=3"]))
    with pytest.raises(ValueError):
        InstanceSpec.parse("two_point", ["n"])
    with pytest.raises(ValueError):
        generate(InstanceSpec.parse("hypercube", ["n=13"]))


## reports
def test_check_report_tolerance_and_csv(tmp_path):
    report = CheckReport(tol=1e-9, seed=5)
    assert report.add("a", "fine", "x <= y", 1.0, 1.0).passed
    assert report.add("a", "rounding", "x <= y", 1.0 + 1e-12, 1.0).passed
    assert not report.add("a", "broken", "x <= y", 2.0, 1.0).passed
    assert not report.add("a", "strict", "x < y", 1.0, 1.0,
                          strict=True).passed
    report.add("a", "advisory", "x <= y", 3.0, 1.0, gating=False)
    with pytest.raises(ValueError):
        report.add("a", "undefined", "x <= y", float("nan"), 1.0)
    assert not report.ok
    assert [r.inequality for r in report.failures()] == ["broken", "strict"]
    assert len(report.failures(gating_only=False)) == 3
    summary = report.summary()
    assert summary["failed"] == 3 and summary["gating_failed"] == 2
    out = tmp_path / "report.csv"
    report.to_csv(out)
    frame = pandas.read_csv(out)
    assert list(frame.columns) == COLUMNS
    assert len(frame) == 5


def test_variation_constant():
    assert variation_constant(1.0) == pytest.approx(22.0)
    assert variation_constant(2.0) == \
        pytest.approx(2 * (2 ** 0.5 * (1 + 2 * 2 ** 0.5) + 1))


## inequality suites
@settings(max_examples=15, deadline=None)
@given(seeds)
def test_measure_suite_passes(seed):
    T, nu, rng = random_instance(seed, max_edges=10, max_atoms=7)
    report = check_measure_inequalities(nu, settings=FAST)
    assert report.ok, [r.as_row() for r in report.failures()]
    names = {r.inequality for r in report.records}
    assert "sturm_at_barycenter" in names
    assert "variation_transfer_literal" in names


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_euclidean_suite_passes(seed):
    rng = numpy.random.default_rng(seed)
    nu = euclidean_cloud(int(rng.integers(2, 4)), int(rng.integers(2, 9)),
                         rng)
    report = check_euclidean_inequalities(nu, p_grid=[1, 1.5, 2, 3],
                                          settings=FAST)
    assert report.ok, [r.as_row() for r in report.failures()]
    names = {r.inequality for r in report.records}
    assert names == {"ball_about_mean", "partial_diameter_vs_crad",
                     "crad_vs_variation", "crad_vs_variation2"}


def test_euclidean_suite_square():
    # unit masses on the corners of the unit square, mean at the center
    nu = LineMeasure([[0, 0], [1, 0], [0, 1], [1, 1]], [1, 1, 1, 1])
    report = check_euclidean_inequalities(nu, kappa_grid=[0.25], p_grid=[2])
    assert report.ok
    frame = report.to_frame()
    row = frame[frame["inequality"] == "crad_vs_variation2"].iloc[0]
    # m = 4, k = 1; every corner sits at sqrt(2)/2 from the center and
    # V_2^2 = 8 * 1 + 4 * 2 over ordered pairs
    assert row["lhs"] == pytest.approx(2 ** 0.5 / 2)
    assert row["rhs"] == pytest.approx(16 ** 0.5 / (2 * 4 * 1.0) ** 0.5)


def test_measure_suite_rejects_bad_grids(star_thirds):
    with pytest.raises(ValueError):
        check_measure_inequalities(star_thirds, kappa_grid=[0.0])
    with pytest.raises(ValueError):
        check_measure_inequalities(star_thirds, kappa_grid=[1.2])
    with pytest.raises(ValueError):
        check_measure_inequalities(star_thirds, p_grid=[0.5])


@settings(max_examples=8, deadline=None)
@given(seeds)
def test_map_suite_passes(seed):
    T, nu, rng = random_instance(seed, max_edges=8, max_atoms=5)
    X = nu.as_space()
    target, _, _ = random_instance(seed + 1, max_edges=10)
    maps = [sample_lipschitz_tree_map(X, target, rng) for _ in range(3)]
    report = check_map_inequalities(X, target, maps, kappa_grid=[0.1, 0.3],
                                    p_grid=[1, 2], settings=FAST, seed=seed)
    assert report.ok, [r.as_row() for r in report.failures()]


def test_map_suite_rejects_foreign_maps(equilateral):
    T, _, rng = random_instance(0)
    other, _, _ = random_instance(1)
    f = sample_lipschitz_tree_map(equilateral, other, rng)
    with pytest.raises(ValueError):
        check_map_inequalities(equilateral, T, [f], settings=FAST)


@settings(max_examples=10, deadline=None)
@given(seeds)
def test_space_suite_passes(seed):
    X = random_space(seed, max_points=5)
    report = check_space_inequalities(X, settings=FAST, seed=seed,
                                      restrictions=1)
    assert report.ok, [r.as_row() for r in report.failures()]


## decay tables
def test_levy_hypercube(tmp_path):
    frame, report = levy_report("hypercube", [4, 5, 6], 0.1)
    assert list(frame.columns) == LEVY_COLUMNS
    assert list(frame["sep"]) == pytest.approx([0.75, 0.6, 2 / 3])
    assert list(frame["points"]) == [16, 32, 64]
    assert report.ok
    # the separation is not monotone in n, which is only advisory
    advisory = report.failures(gating_only=False)
    assert [r.inequality for r in advisory] == ["sep_non_increasing"]
    out = tmp_path / "levy.svg"
    write_levy_svg(frame, out)
    assert out.read_text().lstrip().startswith("<?xml")


def test_levy_two_point():
    frame, report = levy_report("two_point", [2, 5, 10], 0.2)
    # y carries 1/n, too little for a set of mass 0.2 at n = 10
    assert frame["sep"].iloc[-1] == 0.0
    assert (frame["obsdiam_upper"] >= frame["obsdiam_lower"]).all()
    assert report.ok


def test_levy_rejects_bad_ranges():
    with pytest.raises(ValueError):
        levy_report("sphere", [2, 3])
    with pytest.raises(ValueError):
        levy_report("constant", [3, 2])
    with pytest.raises(ValueError):
        levy_report("constant", [])
    with pytest.raises(ValueError):
        levy_report("constant", [2, 3], kappa=1.0)
