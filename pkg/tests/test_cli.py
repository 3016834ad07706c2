import json

import pytest

from treeconc.cli import main
from treeconc.measures import TreeMeasure


@pytest.fixture
def star_files(tmp_path, star3, star_thirds):
    tree = tmp_path / "tree.json"
    tree.write_text(json.dumps(star3.to_json()))
    measure = tmp_path / "measure.json"
    measure.write_text(json.dumps(star_thirds.to_json()))
    center = tmp_path / "center.json"
    point = TreeMeasure(star3, [star3.vertex(0)], [1.0])
    center.write_text(json.dumps(point.to_json()))
    return str(tree), str(measure), str(center)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen(capsys):
    code, out, _ = _run(capsys, ["gen", "two_point", "--param", "n=10"])
    assert code == 0
    inst = json.loads(out)
    assert inst["space"]["dist"] == [[0.0, 10.0], [10.0, 0.0]]
    assert inst["spec"]["params"] == {"n": 10}


def test_median_and_barycenter(capsys, star_files):
    tree, measure, _ = star_files
    code, out, _ = _run(capsys, ["median", tree, measure])
    assert code == 0
    res = json.loads(out)
    assert res["point"] == "v:0"
    assert sorted(res["masses"]) == pytest.approx([1 / 3, 2 / 3])
    code, out, _ = _run(capsys, ["barycenter", tree, measure])
    assert code == 0
    assert json.loads(out)["point"] == "v:0"


def test_w1(capsys, star_files):
    tree, measure, center = star_files
    code, out, _ = _run(capsys, ["w1", tree, center, measure, "--oracle"])
    assert code == 0
    res = json.loads(out)
    assert res["w1"] == pytest.approx(1.0)
    assert res["oracle"] == pytest.approx(1.0)


def test_observable_commands(capsys, tmp_path):
    space = tmp_path / "space.json"
    space.write_text(json.dumps({"dist": [[0, 10], [10, 0]],
                                 "mass": [0.9, 0.1]}))
    code, out, _ = _run(capsys, ["obsdiam", str(space), "--kappa", "0.2"])
    assert code == 0
    assert json.loads(out)["upper"] == 0.0
    code, out, _ = _run(capsys, ["obsvar", str(space), "--p", "1"])
    assert code == 0
    # 2 * 0.9 * 0.1 * 10
    assert json.loads(out)["lower"] == pytest.approx(1.8)
    code, out, _ = _run(capsys, ["obscrad", str(space), "--kappa", "0.05"])
    assert code == 0
    est = json.loads(out)
    assert est["lower"] <= est["upper"]


def test_invalid_input_exits_2(capsys, tmp_path, star_files):
    code, out, err = _run(capsys, ["obsdiam", str(tmp_path / "missing.json"),
                                   "--kappa", "0.2"])
    assert code == 2
    assert out == ""
    assert err.startswith("error:")
    space = tmp_path / "space.json"
    space.write_text(json.dumps({"dist": [[0, 1], [1, 0]],
                                 "mass": [1.0, 1.0]}))
    code, _, err = _run(capsys, ["obsdiam", str(space), "--kappa", "5"])
    assert code == 2
    tree, measure, _ = star_files
    heavy = tmp_path / "heavy.json"
    heavy.write_text(json.dumps({"atoms": [["v:1", 3.0]]}))
    code, _, _ = _run(capsys, ["w1", tree, measure, str(heavy)])
    assert code == 2
    code, _, _ = _run(capsys, ["gen", "two_point", "--param", "n=1"])
    assert code == 2


def test_check_suites(capsys):
    code, out, _ = _run(capsys, [
        "check", "measures", "--param", "edges=5", "--param", "atoms=4",
        "--count", "2"])
    assert code == 0
    summary = json.loads(out)["summary"]
    assert summary["gating_failed"] == 0
    assert summary["records"] > 0
    code, out, _ = _run(capsys, [
        "check", "space", "--generator", "two_point", "--param", "n=3",
        "--count", "1", "--out", "csv"])
    assert code == 0
    assert out.splitlines()[0].startswith("instance,inequality,anchor")
    code, out, _ = _run(capsys, [
        "check", "euclidean", "--generator", "euclidean_cloud",
        "--param", "d=3", "--param", "k=6", "--count", "2"])
    assert code == 0
    assert json.loads(out)["summary"]["gating_failed"] == 0
    # tree measures are not measures on R^d
    code, _, _ = _run(capsys, ["check", "euclidean", "--count", "1"])
    assert code == 2


def test_check_failure_exits_1(capsys):
    # a negative tolerance turns every equality into a failure
    code, out, _ = _run(capsys, [
        "check", "space", "--generator", "constant", "--count", "1",
        "--tol=-1"])
    assert code == 1
    assert json.loads(out)["summary"]["gating_failed"] > 0


def test_levy(capsys, tmp_path):
    svg = tmp_path / "levy.svg"
    code, out, _ = _run(capsys, [
        "levy", "hypercube", "--n-min", "4", "--n-max", "6", "--svg",
        str(svg)])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("family,n,points,kappa,sep")
    assert len(lines) == 4
    assert svg.exists()
    code, _, _ = _run(capsys, ["levy", "constant", "--n-min", "5",
                               "--n-max", "2"])
    assert code == 2


def test_verbose_keeps_stdout_clean(capsys, star_files):
    tree, measure, _ = star_files
    code, out, err = _run(capsys, ["barycenter", tree, measure, "-v"])
    assert code == 0
    json.loads(out)
    assert "barycenter certified" in err
