"""acceptance runs for treeconc

Each criterion prints one status line with its runtime; the exit status is
the number of failed criteria. A criterion that runs past its time limit
counts as failed. Instance counts default to the full runs and can be
reduced with --scale for a quick smoke test, which shrinks the limits of the
counted runs in proportion (never below one second).
"""
import os
import sys
import time
from argparse import ArgumentParser

import numpy
from tqdm.auto import tqdm

from treeconc.config import DEFAULT
from treeconc.harness import (
    CheckReport, check_map_inequalities, check_measure_inequalities,
    check_space_inequalities, levy_report, random_tree, random_tree_measure,
    two_point, write_levy_svg
)
from treeconc.location import (
    barycenter_gap, real_barycenter, tree_barycenter, tree_median
)
from treeconc.measures import (
    LipschitzFunction, MMSpace, TreeMeasure, ball_mass, central_radius,
    coarsen, pushforward
)
from treeconc.observable import (
    obsdiam_R, ordering_oracle_obsdiam, sample_lipschitz_tree_map
)
from treeconc.transport import w1_tree, w1_tree_oracle


def _instances(count: int, seed: int, max_edges: int = 50,
               max_atoms: int = 30):
    rng = numpy.random.default_rng(seed)
    for _ in range(count):
        T = random_tree(int(rng.integers(0, max_edges + 1)), rng)
        nu = random_tree_measure(T, int(rng.integers(1, max_atoms + 1)), rng)
        yield T, nu


def _unit(nu: TreeMeasure) -> TreeMeasure:
    return TreeMeasure(nu.tree, nu.points, nu.masses / nu.m)


def two_point_space(verbose: bool) -> bool:
    X = two_point(10)
    ok = True
    f = LipschitzFunction(X, X.dist[0])
    pf = pushforward(X, f)
    c = real_barycenter(pf)
    for kappa in numpy.arange(0.1, 0.9, 0.1):
        ok &= obsdiam_R(X, float(kappa)).upper <= 1e-12
        ok &= abs(central_radius(pf, float(kappa), c) - 1.0) <= 1e-12
    ok &= ball_mass(pf, c, 0.5) == 0.0
    return bool(ok)


def sturm_certificate(count: int, seed: int, verbose: bool) -> bool:
    ok = True
    for T, nu in tqdm(list(_instances(count, seed)), disable=not verbose,
                      desc="sturm"):
        scale = nu.m * max(nu.diameter(), 1.0) ** 2
        res = tree_barycenter(T, nu)
        ok &= res.max_violation <= 1e-9 * nu.m * max(nu.diameter(), 1.0)
        ok &= barycenter_gap(T, nu, res.point, probes=100,
                             seed=seed) <= 1e-9 * scale
    return bool(ok)


def median_certificate(count: int, seed: int, verbose: bool) -> bool:
    ok = True
    for T, nu in tqdm(list(_instances(count, seed)), disable=not verbose,
                      desc="median"):
        med = tree_median(T, nu)
        ok &= min(med.mass_a, med.mass_b) - nu.m / 3 >= -1e-12 * nu.m
    return bool(ok)


def transport(count: int, seed: int, verbose: bool) -> bool:
    rng = numpy.random.default_rng(seed)
    ok = True
    for _ in tqdm(range(count), disable=not verbose, desc="transport"):
        T = random_tree(int(rng.integers(1, 20)), rng)
        mu = _unit(random_tree_measure(T, int(rng.integers(1, 17)), rng))
        nu = _unit(random_tree_measure(T, int(rng.integers(1, 17)), rng))
        w = w1_tree(T, mu, nu)
        ok &= abs(w - w1_tree_oracle(T, mu, nu)[0]) <= 1e-9 * max(1.0, w)
        shift = T.distance(tree_barycenter(T, mu).point,
                           tree_barycenter(T, nu).point)
        ok &= shift <= w / mu.m + 1e-9 * max(1.0, w)
        eps = float(rng.uniform(0.05, 1.0))
        ok &= w1_tree(T, coarsen(nu, eps), nu) <= eps * nu.m + 1e-9
    return bool(ok)


def measure_suite(count: int, seed: int, verbose: bool) -> bool:
    report = CheckReport(tol=DEFAULT.check_tol, seed=seed)
    for i, (T, nu) in enumerate(tqdm(list(_instances(count, seed)),
                                     disable=not verbose, desc="measures")):
        report.extend(check_measure_inequalities(
            nu, instance="measure{:d}".format(i)))
    _show_failures(report)
    return report.ok


def map_suite(count: int, n_maps: int, seed: int, verbose: bool) -> bool:
    rng = numpy.random.default_rng(seed)
    settings = DEFAULT.replace(witness_restarts=4)
    report = CheckReport(tol=settings.check_tol, seed=seed)
    for i in tqdm(range(count), disable=not verbose, desc="maps"):
        base = random_tree(int(rng.integers(1, 12)), rng)
        X = random_tree_measure(base, int(rng.integers(2, 10)), rng).as_space()
        T = random_tree(20, rng)
        maps = [sample_lipschitz_tree_map(X, T, rng) for _ in range(n_maps)]
        report.extend(check_map_inequalities(
            X, T, maps, settings=settings, instance="space{:d}".format(i),
            seed=seed + i))
    _show_failures(report)
    return report.ok


def sandwich(count: int, seed: int, verbose: bool) -> bool:
    rng = numpy.random.default_rng(seed)
    # bounds without the oracle, so that the comparison is not circular
    no_oracle = DEFAULT.replace(ordering_oracle_limit=0)
    report = CheckReport(tol=DEFAULT.check_tol, seed=seed)
    for i in tqdm(range(count), disable=not verbose, desc="sandwich"):
        n = int(rng.integers(1, 7))
        pts = rng.uniform(0, 1, size=(n, int(rng.integers(1, 4))))
        D = numpy.sqrt(((pts[:, None] - pts[None]) ** 2).sum(-1))
        if n > 1 and D[~numpy.eye(n, dtype=bool)].min() <= 1e-9:
            continue
        X = MMSpace(D, rng.uniform(0.1, 1.0, size=n))
        label = "space{:d}".format(i)
        report.extend(check_space_inequalities(X, instance=label,
                                               seed=seed + i, restrictions=1))
        for frac in DEFAULT.kappa_grid:
            kappa = frac * X.m
            exact, _ = ordering_oracle_obsdiam(X, kappa)
            est = obsdiam_R(X, kappa, no_oracle, seed=seed + i)
            report.add(label, "oracle_above_lower", "lower <= ObsDiam",
                       est.lower, exact, kappa=kappa)
            report.add(label, "oracle_below_upper", "ObsDiam <= upper",
                       exact, est.upper, kappa=kappa)
    _show_failures(report)
    return report.ok


def levy(out_dir: str, verbose: bool) -> bool:
    frame, report = levy_report("hypercube", range(2, 13), 0.1,
                                verbose=verbose)
    frame.to_csv(os.path.join(out_dir, "levy_hypercube.csv"), index=False,
                 float_format="%.12g")
    write_levy_svg(frame, os.path.join(out_dir, "levy_hypercube.svg"))
    sep = dict(zip(frame["n"], frame["sep"]))
    print("\tsep column: " + ", ".join(
        "{:d}:{:.4g}".format(n, s) for n, s in sep.items()), flush=True)
    _show_failures(report)
    return report.ok


def _show_failures(report: CheckReport, limit: int = 10):
    for rec in report.failures()[:limit]:
        print("\tFAILED {} {} kappa={} p={}: {:.6g} > {:.6g}".format(
            rec.instance, rec.inequality, rec.kappa, rec.p, rec.lhs,
            rec.rhs), flush=True)


def main(out_dir: str, scale: float, seed: int, verbose: bool) -> int:
    if not os.path.exists(out_dir):
        os.mkdir(out_dir)

    def n(full: int) -> int:
        return max(1, int(round(full * scale)))

    def limit(full: float) -> float:
        return max(1.0, full * min(scale, 1.0))

    runs = [
        # name, run, time limit in seconds (None: unlimited)
        ("two-point space", lambda: two_point_space(verbose), 1.0),
        ("sturm certificate", lambda: sturm_certificate(n(1000), seed,
                                                         verbose),
         limit(60.0)),
        ("median certificate", lambda: median_certificate(n(1000), seed,
                                                           verbose),
         limit(10.0)),
        ("transport", lambda: transport(n(500), seed, verbose), None),
        ("measure suite", lambda: measure_suite(n(1000), seed, verbose),
         limit(300.0)),
        ("map suite", lambda: map_suite(n(100), n(50), seed, verbose),
         limit(600.0)),
        ("sandwich", lambda: sandwich(n(200), seed, verbose), limit(300.0)),
        ("levy hypercube", lambda: levy(out_dir, verbose), 120.0),
    ]
    failed = 0
    for name, run, seconds in runs:
        start = time.perf_counter()
        ok = run()
        took = time.perf_counter() - start
        slow = seconds is not None and took > seconds
        failed += 0 if ok and not slow else 1
        status = "ok" if ok else "FAILED"
        if slow:
            status += " TOO SLOW (limit {:.0f} s)".format(seconds)
        print("{:<20s} {:s} ({:.1f} s)".format(name, status, took),
              flush=True)
    return failed


if __name__ == "__main__":
    parser = ArgumentParser("treeconc acceptance runs")
    parser.add_argument("-o", "--output-folder", type=str,
                        default="acceptance_out")
    parser.add_argument("--scale", type=float, default=1.0,
                        help="fraction of the full instance counts")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-v", "--verbose", action="store_true", default=False)
    args = parser.parse_args()
    sys.exit(main(args.output_folder, args.scale, args.seed, args.verbose))
