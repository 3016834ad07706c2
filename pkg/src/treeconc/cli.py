"""command line front end

    treeconc <command> [options]

Results go to stdout as JSON (or CSV for tables); progress output requested
with `-v` goes to stderr. Exit status is 0 on success, 1 when a gating
inequality check failed and 2 on invalid input.
"""
import argparse
import contextlib
import sys
from typing import List, Optional

from ._util import default_rng, dumps, map_in_pool, read_json
from .config import Settings, load_config
from .harness import CheckReport, InstanceSpec, generate, generate_many
from .harness import check_map_inequalities, check_measure_inequalities
from .harness import check_euclidean_inequalities, check_space_inequalities
from .harness import levy_report, write_levy_svg
from .harness import FAMILIES, GENERATORS
from .location import tree_barycenter, tree_median
from .measures import LineMeasure, MMSpace, TreeMeasure
from .observable import obscrad_R, obsdiam_R, obslpvar_R
from .observable import sample_lipschitz_tree_map
from .rtree import Tree
from .transport import w1_tree, w1_tree_oracle

# target tree size for `check maps` when no `tree_edges` parameter is given
DEFAULT_TREE_EDGES = 10


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default from the config)")
    common.add_argument("--tol", type=float, default=None,
                        help="relative tolerance of the inequality checks")
    common.add_argument("--out", choices=("json", "csv"), default=None,
                        help="output format")
    common.add_argument("--svg", type=str, default=None,
                        help="write a chart to this path (levy)")
    common.add_argument("--config", type=str, default=None,
                        help="yaml file overriding the packaged defaults")
    common.add_argument("--workers", type=int, default=None,
                        help="worker processes")
    common.add_argument("--restarts", type=int, default=None,
                        help="coordinate ascent restarts of the witness "
                        "search")
    common.add_argument("-v", "--verbose", action="store_true",
                        default=False)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        "treeconc",
        description="Concentration of measure on finite R-trees")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common],
                       help="generate an instance")
    p.add_argument("generator", choices=sorted(GENERATORS))
    p.add_argument("--param", action="append", default=[],
                   metavar="KEY=VALUE")

    for name, what in (("median", "a median"),
                       ("barycenter", "the center of mass")):
        p = sub.add_parser(name, parents=[common],
                           help="{} of a tree measure".format(what))
        p.add_argument("tree", help="tree json")
        p.add_argument("measure", help="measure json")

    p = sub.add_parser("w1", parents=[common],
                       help="Wasserstein-1 distance on a tree")
    p.add_argument("tree")
    p.add_argument("mu")
    p.add_argument("nu")
    p.add_argument("--oracle", action="store_true", default=False,
                   help="also solve the transportation problem")

    for name in ("obsdiam", "obscrad"):
        p = sub.add_parser(name, parents=[common],
                           help="certified bounds with screen R")
        p.add_argument("space", help="mm-space (or instance) json")
        p.add_argument("--kappa", type=float, required=True)
    p = sub.add_parser("obsvar", parents=[common],
                       help="certified bounds on the Lp-variation")
    p.add_argument("space", help="mm-space (or instance) json")
    p.add_argument("--p", type=float, default=1.0)

    p = sub.add_parser("check", parents=[common],
                       help="run an inequality suite")
    p.add_argument("suite",
                   choices=("measures", "euclidean", "maps", "space"))
    p.add_argument("--generator", choices=sorted(GENERATORS),
                   default="random_tree")
    p.add_argument("--param", action="append", default=[],
                   metavar="KEY=VALUE")
    p.add_argument("--count", type=int, default=10,
                   help="number of instances")
    p.add_argument("--maps", type=int, default=20,
                   help="sampled maps per instance (maps suite)")

    p = sub.add_parser("levy", parents=[common],
                       help="decay table along a family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--kappa", type=float, default=0.1,
                   help="mass level as a fraction of the total")
    return parser


def _settings(args) -> Settings:
    return load_config(args.config, seed=args.seed, check_tol=args.tol,
                       workers=args.workers, witness_restarts=args.restarts)


def _read_space(path: str) -> MMSpace:
    obj = read_json(path)
    if isinstance(obj, dict) and "space" in obj:
        obj = obj["space"]
    return MMSpace.from_json(obj)


def _read_tree_measure(tree_path: str, measure_path: str):
    T = Tree.from_json(read_json(tree_path))
    return T, TreeMeasure.from_json(T, read_json(measure_path))


def _emit(text: str, out):
    out.write(text if text.endswith("\n") else text + "\n")
    out.flush()


def _emit_report(report: CheckReport, fmt: Optional[str], out):
    if fmt == "csv":
        _emit(report.to_csv(), out)
    else:
        _emit(dumps(report.to_json()), out)


class _MeasureTask:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, inst) -> CheckReport:
        if inst.measure is None or inst.tree is None:
            raise ValueError("generator '{}' does not produce a tree "
                             "measure".format(inst.spec.generator))
        return check_measure_inequalities(inst.measure,
                                          settings=self.settings,
                                          instance=inst.spec.label())


class _SpaceTask:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, inst) -> CheckReport:
        return check_space_inequalities(inst.space, settings=self.settings,
                                        instance=inst.spec.label(),
                                        seed=inst.spec.seed)


class _EuclideanTask:
    def __init__(self, settings: Settings):
        self.settings = settings

    def __call__(self, inst) -> CheckReport:
        if not isinstance(inst.measure, LineMeasure):
            raise ValueError("generator '{}' does not produce a measure on "
                             "R^d".format(inst.spec.generator))
        return check_euclidean_inequalities(inst.measure,
                                            settings=self.settings,
                                            instance=inst.spec.label())


def _check(args, settings: Settings, out) -> int:
    if args.count < 1:
        raise ValueError("--count must be positive")
    spec = InstanceSpec.parse(args.generator, args.param, settings.seed)
    if args.suite == "maps" and "tree_edges" not in spec.params:
        spec = spec.with_params(tree_edges=DEFAULT_TREE_EDGES)
    instances = generate_many(spec, args.count)
    report = CheckReport(tol=settings.check_tol, seed=settings.seed)
    if args.suite == "maps":
        if args.maps < 1:
            raise ValueError("--maps must be positive")
        for inst in instances:
            rng = default_rng(inst.spec.seed)
            maps = [sample_lipschitz_tree_map(inst.space, inst.target, rng,
                                              tol=settings.lipschitz_tol)
                    for _ in range(args.maps)]
            report.extend(check_map_inequalities(
                inst.space, inst.target, maps, settings=settings,
                instance=inst.spec.label(), seed=inst.spec.seed,
                verbose=args.verbose))
    else:
        tasks = {"measures": _MeasureTask, "euclidean": _EuclideanTask,
                 "space": _SpaceTask}
        task = tasks[args.suite](settings)
        for part in map_in_pool(task, instances, workers=settings.workers,
                                verbose=args.verbose, desc=args.suite):
            report.extend(part)
    if args.verbose:
        print("{:d} records, {:d} gating failures".format(
            len(report.records), len(report.failures())), flush=True)
    _emit_report(report, args.out, out)
    return 0 if report.ok else 1


def _run(args, out) -> int:
    settings = _settings(args)
    cmd = args.command
    if cmd == "gen":
        inst = generate(InstanceSpec.parse(args.generator, args.param,
                                           settings.seed))
        return _result(inst.to_json(), out)
    if cmd == "median":
        T, nu = _read_tree_measure(args.tree, args.measure)
        res = tree_median(T, nu, verbose=args.verbose)
        return _result(res.to_json(T), out)
    if cmd == "barycenter":
        T, nu = _read_tree_measure(args.tree, args.measure)
        res = tree_barycenter(T, nu, max_iter=settings.barycenter_max_iter,
                              verbose=args.verbose)
        return _result(res.to_json(T), out)
    if cmd == "w1":
        T = Tree.from_json(read_json(args.tree))
        mu = TreeMeasure.from_json(T, read_json(args.mu))
        nu = TreeMeasure.from_json(T, read_json(args.nu))
        res = {"w1": w1_tree(T, mu, nu)}
        if args.oracle:
            cost, plan = w1_tree_oracle(T, mu, nu)
            res["oracle"] = cost
            res["plan"] = plan.to_json()
        return _result(res, out)
    if cmd in ("obsdiam", "obscrad"):
        fun = obsdiam_R if cmd == "obsdiam" else obscrad_R
        X = _read_space(args.space)
        est = fun(X, args.kappa, settings, verbose=args.verbose)
        return _result(est.to_json(), out)
    if cmd == "obsvar":
        X = _read_space(args.space)
        est = obslpvar_R(X, args.p, settings, verbose=args.verbose)
        return _result(est.to_json(), out)
    if cmd == "check":
        return _check(args, settings, out)
    if cmd == "levy":
        if args.n_max < args.n_min:
            raise ValueError("--n-max must not be below --n-min")
        frame, report = levy_report(
            args.family, range(args.n_min, args.n_max + 1), args.kappa,
            settings=settings.light(), seed=settings.seed,
            workers=settings.workers, verbose=args.verbose)
        if args.svg is not None:
            write_levy_svg(frame, args.svg)
        if args.out == "json":
            _emit(dumps({"rows": frame.to_dict(orient="records"),
                         "checks": report.to_json()}), out)
        else:
            _emit(frame.to_csv(index=False, float_format="%.12g"), out)
        return 0 if report.ok else 1
    raise ValueError("unknown command '{}'".format(cmd))


def _result(obj, out) -> int:
    _emit(dumps(obj), out)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    # library progress output must not mix with the results on stdout
    redirect = contextlib.redirect_stdout(sys.stderr) if args.verbose \
        else contextlib.nullcontext()
    try:
        with redirect:
            return _run(args, out)
    except ValueError as err:
        print("error: {}".format(err), file=sys.stderr, flush=True)
        return 2
