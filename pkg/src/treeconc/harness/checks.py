"""inequality suites for tree measures, maps into trees and finite spaces

Every inequality is evaluated on exactly computed ingredients and recorded
as `lhs <= rhs` with its margin; nothing here raises on a failed check.
The sup-type functionals enter through certified bounds only (`.upper` on
the large side, `.lower` on the small side), and maps into trees are checked
one at a time, since each map bounds the supremum over all maps from below.
"""
import dataclasses
import io
import math
import time
from typing import Dict, List, Optional, Sequence

import numpy
import pandas

from .._util import default_rng, map_in_pool
from ..config import DEFAULT, Settings
from ..location import phi_nu, real_barycenter, tree_barycenter, tree_median
from ..location import verify_sturm
from ..measures import LineMeasure, LipschitzTreeMap, MMSpace, TreeMeasure
from ..measures import ball_mass, central_radius, partial_diameter
from ..measures import pushforward, separation, vp
from ..observable import obscrad_R, obsdiam_R, obslpvar_R
from ..rtree import Tree, metric_projection, spanning_subtree
from ..typing import ExponentGrid, KappaGrid

COLUMNS = ["instance", "inequality", "anchor", "lhs", "rhs", "margin",
           "pass", "kappa", "p", "gating"]

# constant of the L2-variation transfer into trees
L2_TRANSFER_CONSTANT = 38.0 + 16.0 * math.sqrt(2.0)


def variation_constant(p: float) -> float:
    """variation_constant `2 {2^(1/p) (1 + 2 * 2^(1/p)) + 1}`."""
    q = 2.0 ** (1.0 / p)
    return 2.0 * (q * (1.0 + 2.0 * q) + 1.0)


@dataclasses.dataclass
class CheckRecord:
    instance: str
    inequality: str
    anchor: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    kappa: Optional[float] = None
    p: Optional[float] = None
    gating: bool = True

    def as_row(self) -> dict:
        return {
            "instance": self.instance, "inequality": self.inequality,
            "anchor": self.anchor, "lhs": self.lhs, "rhs": self.rhs,
            "margin": self.margin, "pass": self.passed, "kappa": self.kappa,
            "p": self.p, "gating": self.gating,
        }


class CheckReport(object):
    """CheckReport Accumulated inequality records.

    A record passes when `lhs <= rhs + tol * max(1, |lhs|, |rhs|, scale)`;
    strict records need `lhs < rhs - tol * (...)`. Reports merge with
    `extend` in call order.

    Args:
        tol (float, optional): relative tolerance. Defaults to 1e-9.
        seed (int, optional): seed recorded in the header. Defaults to None.
    """

    def __init__(self, tol: float = 1e-9, seed: Optional[int] = None):
        self.tol = float(tol)
        self.seed = seed
        self.records: List[CheckRecord] = []
        self.runtime = 0.0

    def add(self, instance: str, inequality: str, anchor: str, lhs: float,
            rhs: float, kappa: Optional[float] = None,
            p: Optional[float] = None, gating: bool = True,
            scale: float = 1.0, strict: bool = False) -> CheckRecord:
        lhs, rhs = float(lhs), float(rhs)
        if not (numpy.isfinite(lhs) and numpy.isfinite(rhs)):
            raise ValueError("{}: non-finite side ({}, {})".format(
                inequality, lhs, rhs))
        slack = self.tol * max(1.0, abs(lhs), abs(rhs), abs(scale))
        passed = lhs < rhs - slack if strict else lhs <= rhs + slack
        rec = CheckRecord(
            instance, inequality, anchor, lhs, rhs, rhs - lhs, bool(passed),
            None if kappa is None else float(kappa),
            None if p is None else float(p), bool(gating))
        self.records.append(rec)
        return rec

    def extend(self, other: "CheckReport") -> "CheckReport":
        self.records.extend(other.records)
        self.runtime += other.runtime
        return self

    def failures(self, gating_only: bool = True) -> List[CheckRecord]:
        return [r for r in self.records
                if not r.passed and (r.gating or not gating_only)]

    @property
    def ok(self) -> bool:
        return not self.failures(gating_only=True)

    def summary(self) -> Dict[str, float]:
        by_name: Dict[str, int] = dict()
        for r in self.failures(gating_only=False):
            by_name[r.inequality] = by_name.get(r.inequality, 0) + 1
        return {
            "records": len(self.records),
            "failed": len(self.failures(gating_only=False)),
            "gating_failed": len(self.failures(gating_only=True)),
            "failed_by_inequality": by_name,
            "runtime": round(self.runtime, 3),
            "seed": self.seed,
            "tol": self.tol,
        }

    def to_frame(self) -> pandas.DataFrame:
        return pandas.DataFrame([r.as_row() for r in self.records],
                                columns=COLUMNS)

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        self.to_frame().to_csv(buf, index=False, float_format="%.12g")
        text = buf.getvalue()
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text)
        return text

    def to_json(self) -> dict:
        return {"summary": self.summary(),
                "records": [r.as_row() for r in self.records]}


def _kappas(m: float, kappa_grid: Optional[KappaGrid],
            settings: Settings) -> List[float]:
    grid = settings.kappa_grid if kappa_grid is None else kappa_grid
    out = []
    for frac in grid:
        if not 0 < frac < 1:
            raise ValueError("kappa grid entries are fractions of the mass "
                             "in (0, 1), got {}".format(frac))
        out.append(float(frac) * m)
    return out


def _exponents(p_grid: Optional[ExponentGrid],
               settings: Settings) -> List[float]:
    grid = settings.p_grid if p_grid is None else p_grid
    out = [float(p) for p in grid]
    if any(p < 1 for p in out):
        raise ValueError("exponents in the p grid must be >= 1")
    return out


## tree measures
def check_measure_inequalities(nu: TreeMeasure,
                               kappa_grid: Optional[KappaGrid] = None,
                               p_grid: Optional[ExponentGrid] = None,
                               settings: Settings = DEFAULT,
                               instance: str = "measure") -> CheckReport:
    """check_measure_inequalities Inequalities about the median, the center
    of mass and the signed distance `phi` of one tree measure.

    Recorded per measure: Sturm condition at the computed barycenter, the
    barycenter inside the convex hull of the support, median part masses and
    the sign of the mean of `phi_* nu`. Per kappa: the ball about the median,
    partial diameter against separation and central radius, the signed mean
    and central radius transfers and the Lp-variation transfers (the forms
    with the tree separation term gate, the forms with the pushed-forward
    separation term are recorded without gating), and the central radius of
    `phi_* nu` against its Lp-variations.

    Args:
        nu (TreeMeasure): the measure
        kappa_grid (KappaGrid, optional): fractions of the total mass.
            Defaults to `settings.kappa_grid`.
        p_grid (ExponentGrid, optional): exponents. Defaults to
            `settings.p_grid`.
        settings (Settings, optional): Defaults to DEFAULT.
        instance (str, optional): label of the records.
            Defaults to "measure".

    Returns:
        CheckReport
    """
    start = time.perf_counter()
    report = CheckReport(tol=settings.check_tol)
    T = nu.tree
    m = nu.m
    diam = nu.diameter()
    kappas = _kappas(m, kappa_grid, settings)
    ps = _exponents(p_grid, settings)
    limit = settings.exact_subset_limit

    bary = tree_barycenter(T, nu, max_iter=settings.barycenter_max_iter)
    med = tree_median(T, nu)
    phi = phi_nu(T, nu, med, bary)
    pf = phi.pushforward()
    c = float(real_barycenter(pf)[0])

    report.add(instance, "sturm_at_barycenter",
               "max_C imbalance(c(nu), C) <= 0",
               verify_sturm(T, nu, bary.point), 0.0, scale=m * diam)
    hull = spanning_subtree(T, nu.points)
    report.add(instance, "barycenter_in_hull", "d(c(nu), hull(supp nu)) <= 0",
               T.distance(bary.point, metric_projection(T, hull, bary.point)),
               0.0, scale=diam)
    report.add(instance, "median_parts", "m/3 <= min(nu(T1), nu(T2))",
               m / 3, min(med.mass_a, med.mass_b), scale=m)
    report.add(instance, "signed_mean_sign", "c(phi_* nu) <= 0", c, 0.0,
               scale=diam)

    vp_nu = {p: vp(nu, p) for p in set(ps) | {2.0}}
    vp_pf = {p: vp(pf, p) for p in set(ps) | {2.0}}
    center = numpy.array([c])
    for kappa in kappas:
        sep_nu = separation(nu, m / 3, kappa / 2, limit)
        sep_pf = separation(pf, m / 3, kappa / 2, limit)
        sep_far = separation(pf, m - kappa, m - kappa, limit)
        r1 = central_radius(pf, kappa, center)
        pd = partial_diameter(nu, kappa, limit)
        crad = central_radius(nu, kappa, bary.point)

        report.add(instance, "ball_about_median",
                   "m - k <= nu(B(med, Sep(nu; m/3, k/2)))", m - kappa,
                   ball_mass(nu, med.point, sep_nu), kappa=kappa, scale=m)
        report.add(instance, "partial_diameter_vs_sep",
                   "diam(nu, m - k) <= 2 Sep(nu; m/3, k/2)", pd, 2 * sep_nu,
                   kappa=kappa, scale=diam)
        report.add(instance, "partial_diameter_vs_crad",
                   "diam(nu, m - k) <= 2 CRad(nu, m - k)", pd, 2 * crad,
                   kappa=kappa, scale=diam)
        report.add(instance, "signed_mean_bound",
                   "|c(phi_* nu)| <= CRad(phi_* nu) + Sep(nu; m/3, k/2)"
                   " + Sep(phi_* nu; m-k, m-k)",
                   abs(c), r1 + sep_nu + sep_far, kappa=kappa, scale=diam)
        report.add(instance, "signed_mean_bound_literal",
                   "|c(phi_* nu)| <= CRad(phi_* nu) + Sep(phi_* nu; m/3, k/2)"
                   " + Sep(phi_* nu; m-k, m-k)",
                   abs(c), r1 + sep_pf + sep_far, kappa=kappa, gating=False,
                   scale=diam)
        report.add(instance, "crad_transfer",
                   "CRad(nu) <= CRad(phi_* nu) + 2 Sep(nu; m/3, k/2)"
                   " + Sep(phi_* nu; m-k, m-k)",
                   crad, r1 + 2 * sep_nu + sep_far, kappa=kappa, scale=diam)
        report.add(instance, "crad_transfer_literal",
                   "CRad(nu) <= CRad(phi_* nu) + Sep(nu; m/3, k/2)"
                   " + Sep(phi_* nu; m/3, k/2) + Sep(phi_* nu; m-k, m-k)",
                   crad, r1 + sep_nu + sep_pf + sep_far, kappa=kappa,
                   gating=False, scale=diam)

        bracket = r1 + sep_nu + sep_far
        bracket_literal = r1 + sep_pf + sep_far
        for p in ps:
            lead = 2 * m ** (2.0 / p)
            report.add(instance, "variation_transfer",
                       "V_p(nu) <= 2 m^(2/p) {CRad(phi_* nu) + Sep(nu; m/3,"
                       " k/2) + Sep(phi_* nu; m-k, m-k)} + 2 V_p(phi_* nu)",
                       vp_nu[p], lead * bracket + 2 * vp_pf[p], kappa=kappa,
                       p=p, scale=m * diam)
            report.add(instance, "variation_transfer_literal",
                       "V_p(nu) <= 2 m^(2/p) {CRad(phi_* nu) + Sep(phi_* nu;"
                       " m/3, k/2) + Sep(phi_* nu; m-k, m-k)}"
                       " + 2 V_p(phi_* nu)",
                       vp_nu[p], lead * bracket_literal + 2 * vp_pf[p],
                       kappa=kappa, p=p, gating=False, scale=m * diam)
            report.add(instance, "variation_via_signed_mean",
                       "V_p(nu) <= 2 m^(2/p) |c(phi_* nu)| + 2 V_p(phi_* nu)",
                       vp_nu[p], lead * abs(c) + 2 * vp_pf[p], kappa=kappa,
                       p=p, scale=m * diam)
            report.add(instance, "crad_vs_variation",
                       "CRad(phi_* nu, m-k) <= V_p(phi_* nu) / (m k)^(1/p)",
                       r1, vp_pf[p] / (m * kappa) ** (1.0 / p), kappa=kappa,
                       p=p, scale=diam)
        report.add(instance, "variation2_transfer",
                   "V_2(nu)^2 <= 4 m^2 {CRad(phi_* nu) + Sep(nu; m/3, k/2)"
                   " + Sep(phi_* nu; m-k, m-k)}^2 + 2 V_2(phi_* nu)^2",
                   vp_nu[2.0] ** 2,
                   4 * m ** 2 * bracket ** 2 + 2 * vp_pf[2.0] ** 2,
                   kappa=kappa, p=2.0, scale=(m * diam) ** 2)
        report.add(instance, "variation2_transfer_literal",
                   "V_2(nu)^2 <= 4 m^2 {CRad(phi_* nu) + Sep(phi_* nu; m/3,"
                   " k/2) + Sep(phi_* nu; m-k, m-k)}^2 + 2 V_2(phi_* nu)^2",
                   vp_nu[2.0] ** 2,
                   4 * m ** 2 * bracket_literal ** 2 + 2 * vp_pf[2.0] ** 2,
                   kappa=kappa, p=2.0, gating=False, scale=(m * diam) ** 2)
        report.add(instance, "crad_vs_variation2",
                   "CRad(phi_* nu, m-k) <= V_2(phi_* nu) / sqrt(2 m k)",
                   r1, vp_pf[2.0] / math.sqrt(2 * m * kappa), kappa=kappa,
                   p=2.0, scale=diam)
    report.runtime = time.perf_counter() - start
    return report


## measures in R^d
def check_euclidean_inequalities(nu: LineMeasure,
                                 kappa_grid: Optional[KappaGrid] = None,
                                 p_grid: Optional[ExponentGrid] = None,
                                 settings: Settings = DEFAULT,
                                 instance: str = "euclidean") -> CheckReport:
    """check_euclidean_inequalities Central radius about the mean of a
    measure on R^d against its Lp-variations.

    Recorded per kappa: the ball about the mean carries `m - k`, the partial
    diameter is at most twice the central radius, and the central radius
    about the mean is bounded by `V_p / (m k)^(1/p)` for every exponent and
    by `V_2 / sqrt(2 m k)`.

    Args:
        nu (LineMeasure): the measure, any dimension
        kappa_grid (KappaGrid, optional): Defaults to `settings.kappa_grid`.
        p_grid (ExponentGrid, optional): Defaults to `settings.p_grid`.
        settings (Settings, optional): Defaults to DEFAULT.
        instance (str, optional): record label. Defaults to "euclidean".

    Returns:
        CheckReport
    """
    start = time.perf_counter()
    report = CheckReport(tol=settings.check_tol)
    m = nu.m
    diam = nu.diameter()
    kappas = _kappas(m, kappa_grid, settings)
    ps = _exponents(p_grid, settings)
    limit = settings.exact_subset_limit

    center = real_barycenter(nu)
    vp_nu = {p: vp(nu, p) for p in set(ps) | {2.0}}
    for kappa in kappas:
        crad = central_radius(nu, kappa, center)
        report.add(instance, "ball_about_mean",
                   "m - k <= nu(B(c(nu), CRad(nu, m - k)))", m - kappa,
                   ball_mass(nu, center, crad), kappa=kappa, scale=m)
        report.add(instance, "partial_diameter_vs_crad",
                   "diam(nu, m - k) <= 2 CRad(nu, m - k)",
                   partial_diameter(nu, kappa, limit), 2 * crad,
                   kappa=kappa, scale=diam)
        for p in ps:
            report.add(instance, "crad_vs_variation",
                       "CRad(nu, m-k) <= V_p(nu) / (m k)^(1/p)",
                       crad, vp_nu[p] / (m * kappa) ** (1.0 / p),
                       kappa=kappa, p=p, scale=diam)
        report.add(instance, "crad_vs_variation2",
                   "CRad(nu, m-k) <= V_2(nu) / sqrt(2 m k)",
                   crad, vp_nu[2.0] / math.sqrt(2 * m * kappa), kappa=kappa,
                   p=2.0, scale=diam)
    report.runtime = time.perf_counter() - start
    return report


## maps into trees
@dataclasses.dataclass
class _SpaceBounds:
    # per kappa: Sep(m/3, k/2), Sep(k/3, k/3), Sep(m-k, m-k), obsdiam and
    # obscrad upper bounds; per p: obslpvar upper bound
    kappas: List[float]
    sep_median: List[float]
    sep_third: List[float]
    sep_far: List[float]
    obsdiam_upper: List[float]
    obscrad_upper: List[float]
    lpvar_upper: Dict[float, float]


def space_bounds(X: MMSpace, kappas: Sequence[float], ps: Sequence[float],
                 settings: Settings = DEFAULT, seed=None) -> _SpaceBounds:
    m = X.m
    limit = settings.exact_subset_limit
    rng = default_rng(settings.seed if seed is None else seed)
    return _SpaceBounds(
        kappas=list(kappas),
        sep_median=[separation(X, m / 3, k / 2, limit) for k in kappas],
        sep_third=[separation(X, k / 3, k / 3, limit) for k in kappas],
        sep_far=[separation(X, m - k, m - k, limit) for k in kappas],
        obsdiam_upper=[obsdiam_R(X, k, settings, rng).upper for k in kappas],
        obscrad_upper=[obscrad_R(X, k, settings, rng).upper for k in kappas],
        lpvar_upper={p: obslpvar_R(X, p, settings, rng).upper
                     for p in set(ps) | {2.0}},
    )


def _check_one_map(X: MMSpace, bounds: _SpaceBounds, ps: Sequence[float],
                   settings: Settings, instance: str,
                   f: LipschitzTreeMap) -> CheckReport:
    report = CheckReport(tol=settings.check_tol)
    T = f.target
    m = X.m
    limit = settings.exact_subset_limit
    nu = pushforward(X, f)
    diam = max(nu.diameter(), X.diameter())
    gap = T.distance_matrix(f.images) - X.dist
    numpy.fill_diagonal(gap, 0.0)
    report.add(instance, "map_is_1_lipschitz", "d_T(f x, f y) <= d_X(x, y)",
               float(gap.max()), 0.0, scale=diam)
    bary = tree_barycenter(T, nu, max_iter=settings.barycenter_max_iter)
    for i, kappa in enumerate(bounds.kappas):
        sep_med = bounds.sep_median[i]
        pd = partial_diameter(nu, kappa, limit)
        via_median = 2 * sep_med
        via_line = 2 * bounds.sep_third[i] + 4 * bounds.obsdiam_upper[i]
        report.add(instance, "tree_diameter_via_sep",
                   "diam(f_* mu, m-k) <= 2 Sep(X; m/3, k/2)", pd, via_median,
                   kappa=kappa, scale=diam)
        report.add(instance, "tree_diameter_via_line",
                   "diam(f_* mu, m-k) <= 2 Sep(X; k/3, k/3)"
                   " + 4 ObsDiam_R(X; -k)", pd, via_line, kappa=kappa,
                   scale=diam)
        report.add(instance, "tree_diameter_bounds_compared",
                   "2 Sep(X; m/3, k/2) <= 2 Sep(X; k/3, k/3)"
                   " + 4 ObsDiam_R(X; -k)", via_median, via_line,
                   kappa=kappa, gating=False, scale=diam)
        report.add(instance, "tree_crad",
                   "CRad(f_* mu, m-k) <= ObsCRad_R(X; -k)"
                   " + 2 Sep(X; m/3, k/2) + Sep(X; m-k, m-k)",
                   central_radius(nu, kappa, bary.point),
                   bounds.obscrad_upper[i] + 2 * sep_med + bounds.sep_far[i],
                   kappa=kappa, scale=diam)
        if len(nu) <= settings.l1_max_atoms:
            report.add(instance, "pushforward_sep_monotone",
                       "Sep(f_* mu; m/3, k/2) <= Sep(X; m/3, k/2)",
                       separation(nu, m / 3, kappa / 2, limit), sep_med,
                       kappa=kappa, scale=diam)
    for p in ps:
        report.add(instance, "tree_variation",
                   "V_p(f_* mu) <= 2 {2^(1/p) (1 + 2 2^(1/p)) + 1}"
                   " ObsLpVar_R(X)", vp(nu, p),
                   variation_constant(p) * bounds.lpvar_upper[p], p=p,
                   scale=m * diam)
    report.add(instance, "tree_variation2",
               "V_2(f_* mu)^2 <= (38 + 16 sqrt 2) ObsL2Var_R(X)^2",
               vp(nu, 2.0) ** 2,
               L2_TRANSFER_CONSTANT * bounds.lpvar_upper[2.0] ** 2,
               p=2.0, scale=(m * diam) ** 2)
    return report


def check_map_inequalities(X: MMSpace, T: Tree,
                           maps: Sequence[LipschitzTreeMap],
                           kappa_grid: Optional[KappaGrid] = None,
                           p_grid: Optional[ExponentGrid] = None,
                           settings: Settings = DEFAULT,
                           instance: str = "space", seed=None,
                           verbose: bool = False) -> CheckReport:
    """check_map_inequalities Tree-screen inequalities checked map by map.

    For every map `f` the partial diameter, the central radius about the
    tree barycenter and the Lp-variations of `f_* mu` are compared with the
    right-hand sides assembled from exact separation distances and the
    certified upper bounds of the R-screen functionals.

    Args:
        X (MMSpace): the space
        T (Tree): target tree of all maps
        maps (Sequence[LipschitzTreeMap]): validated maps `X -> T`
        kappa_grid (KappaGrid, optional): Defaults to `settings.kappa_grid`.
        p_grid (ExponentGrid, optional): Defaults to `settings.p_grid`.
        settings (Settings, optional): Defaults to DEFAULT.
        instance (str, optional): label prefix. Defaults to "space".
        seed (optional): seed of the R-screen estimators.
            Defaults to `settings.seed`.
        verbose (bool, optional): progress bar over maps. Defaults to False.

    Raises:
        ValueError: a map belongs to another space or tree

    Returns:
        CheckReport
    """
    start = time.perf_counter()
    for f in maps:
        if f.base is not X or f.target is not T:
            raise ValueError("every map must be validated against X and T")
    kappas = _kappas(X.m, kappa_grid, settings)
    ps = _exponents(p_grid, settings)
    bounds = space_bounds(X, kappas, ps, settings, seed)
    labels = ["{}/map{:d}".format(instance, i) for i in range(len(maps))]
    parts = map_in_pool(
        _MapTask(X, bounds, ps, settings), list(zip(labels, maps)),
        workers=settings.workers, verbose=verbose, desc="maps")
    report = CheckReport(tol=settings.check_tol, seed=seed)
    for part in parts:
        report.extend(part)
    report.runtime = time.perf_counter() - start
    return report


class _MapTask(object):
    # picklable callable for the process pool
    def __init__(self, X, bounds, ps, settings):
        self.X, self.bounds, self.ps, self.settings = X, bounds, ps, settings

    def __call__(self, item):
        label, f = item
        return _check_one_map(self.X, self.bounds, self.ps, self.settings,
                              label, f)


## finite spaces
def check_space_inequalities(X: MMSpace,
                             kappa_grid: Optional[KappaGrid] = None,
                             p_grid: Optional[ExponentGrid] = None,
                             settings: Settings = DEFAULT,
                             instance: str = "space", seed=None,
                             restrictions: int = 3) -> CheckReport:
    """check_space_inequalities Sandwich and derived-bound checks for the
    R-screen functionals of one space.

    Recorded: every estimate's `lower <= upper`; separation against the
    observable diameter in both directions; separation and observable
    central radius against the Lp-variations; the Lp-variation of random
    subspaces against the whole space; separation above half the mass.

    Args:
        X (MMSpace): the space
        kappa_grid (KappaGrid, optional): Defaults to `settings.kappa_grid`.
        p_grid (ExponentGrid, optional): Defaults to `settings.p_grid`.
        settings (Settings, optional): Defaults to DEFAULT.
        instance (str, optional): record label. Defaults to "space".
        seed (optional): Defaults to `settings.seed`.
        restrictions (int, optional): random subspaces per exponent.
            Defaults to 3.

    Returns:
        CheckReport
    """
    start = time.perf_counter()
    rng = default_rng(settings.seed if seed is None else seed)
    report = CheckReport(tol=settings.check_tol,
                         seed=seed if isinstance(seed, int) else None)
    m = X.m
    diam = X.diameter()
    limit = settings.exact_subset_limit
    kappas = _kappas(m, kappa_grid, settings)
    ps = _exponents(p_grid, settings)

    lpvar = {p: obslpvar_R(X, p, settings, rng) for p in set(ps) | {2.0}}
    for p in sorted(lpvar):
        est = lpvar[p]
        report.add(instance, "lpvar_sandwich",
                   "ObsLpVar lower <= ObsLpVar upper", est.lower, est.upper,
                   p=p, scale=m * diam)
        for _ in range(restrictions):
            size = int(rng.integers(1, X.n + 1))
            idx = numpy.sort(rng.choice(X.n, size=size, replace=False))
            sub = obslpvar_R(X.restrict(idx), p, settings, rng)
            report.add(instance, "lpvar_restriction",
                       "ObsLpVar_R(A) <= ObsLpVar_R(X)", sub.lower, est.upper,
                       p=p, scale=m * diam)

    report.add(instance, "sep_above_half_mass", "Sep(X; 0.55m, 0.55m) <= 0",
               separation(X, 0.55 * m, 0.55 * m, limit), 0.0, scale=diam)

    previous = None
    for kappa in sorted(kappas):
        sep = separation(X, kappa, kappa, limit)
        od = obsdiam_R(X, kappa, settings, rng)
        oc = obscrad_R(X, kappa, settings, rng)
        report.add(instance, "obsdiam_sandwich",
                   "ObsDiam lower <= ObsDiam upper", od.lower, od.upper,
                   kappa=kappa, scale=diam)
        report.add(instance, "obscrad_sandwich",
                   "ObsCRad lower <= ObsCRad upper", oc.lower, oc.upper,
                   kappa=kappa, scale=diam)
        if previous is not None:
            k_prev, od_prev = previous
            report.add(instance, "sep_below_obsdiam",
                       "Sep(X; k, k) <= ObsDiam_R(X; -k') for k' < k", sep,
                       od_prev.upper, kappa=kappa, scale=diam)
        if 2 * kappa < m:
            od2 = obsdiam_R(X, 2 * kappa, settings, rng)
            report.add(instance, "obsdiam_below_sep",
                       "ObsDiam_R(X; -2k) <= Sep(X; k, k)", od2.lower, sep,
                       kappa=kappa, scale=diam)
        for p in ps:
            root = (m * kappa) ** (1.0 / p)
            report.add(instance, "sep_vs_lpvar",
                       "Sep(X; k, k) <= 2 ObsLpVar_R(X) / (m k)^(1/p)", sep,
                       2 * lpvar[p].upper / root, kappa=kappa, p=p,
                       scale=diam)
            report.add(instance, "obscrad_vs_lpvar",
                       "ObsCRad_R(X; -k) <= ObsLpVar_R(X) / (m k)^(1/p)",
                       oc.lower, lpvar[p].upper / root, kappa=kappa, p=p,
                       scale=diam)
        report.add(instance, "sep_vs_l2var",
                   "Sep(X; k, k) <= sqrt(2 / (m k)) ObsL2Var_R(X)", sep,
                   math.sqrt(2 / (m * kappa)) * lpvar[2.0].upper,
                   kappa=kappa, p=2.0, scale=diam)
        report.add(instance, "obscrad_vs_l2var",
                   "ObsCRad_R(X; -k) <= ObsL2Var_R(X) / sqrt(2 m k)",
                   oc.lower, lpvar[2.0].upper / math.sqrt(2 * m * kappa),
                   kappa=kappa, p=2.0, scale=diam)
        previous = (kappa, od)
    report.runtime = time.perf_counter() - start
    return report
