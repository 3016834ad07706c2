"""certified intervals for the observable functionals with screen R

Each estimator returns a `BoundEstimate`: `lower` comes from explicit
1-Lipschitz witness functions (or a separation distance), `upper` from an
inequality that holds for every 1-Lipschitz function. On very small spaces
the exact oracles of `exact.py` close the gap.
"""
import dataclasses

import numpy

from .._util import default_rng, first_reaching
from ..config import DEFAULT, Settings
from ..measures import LipschitzFunction, MMSpace, separation, vp
from ..measures import window_diameter
from ..typing import FloatArray
from .exact import ordering_oracle_obsdiam, vertex_oracle_vp
from .witness import Objective, best_witness


@dataclasses.dataclass
class BoundEstimate:
    """BoundEstimate Interval `[lower, upper]` for a supremum over
    1-Lipschitz functions.

    `witness` holds the values of the best function found and
    `witness_value` its objective; `lower` may exceed `witness_value` when a
    separation distance gave the better lower bound. `exact` marks a
    `lower` that is known to be the supremum. `upper` is reported as its
    source certifies it, never raised to `lower`; `consistent` tells whether
    the two still bracket the supremum.
    """
    lower: float
    upper: float
    witness: FloatArray
    witness_value: float
    upper_source: str
    lower_source: str = "witness"
    exact: bool = False

    def consistent(self, tol: float = 1e-9) -> bool:
        return self.lower <= self.upper + tol * max(1.0, abs(self.upper))

    def as_function(self, X: MMSpace, tol: float = 1e-9) -> LipschitzFunction:
        return LipschitzFunction(X, self.witness, tol=tol)

    def to_json(self) -> dict:
        return {
            "lower": float(self.lower),
            "upper": float(self.upper),
            "witness": [float(v) for v in self.witness],
            "witness_value": float(self.witness_value),
            "upper_source": self.upper_source,
            "lower_source": self.lower_source,
            "exact": bool(self.exact),
            "consistent": self.consistent(),
        }


def _check_open_kappa(X: MMSpace, kappa: float):
    m = X.m
    if not numpy.isfinite(kappa) or kappa <= 0 or kappa >= m:
        raise ValueError(
            "kappa must lie strictly between 0 and m (m = {:.6g})".format(m))


def diameter_objective(w: FloatArray, kappa: float) -> Objective:
    """diameter_objective `f -> diam(f_* mu, m - kappa)` on value arrays."""
    m = float(w.sum())
    target = m - kappa

    def fun(f: FloatArray) -> float:
        return window_diameter(f, w, target, m)
    return fun


def central_radius_objective(w: FloatArray, kappa: float) -> Objective:
    """central_radius_objective `f -> CRad(f_* mu, kappa)` about the mean of
    the push-forward."""
    m = float(w.sum())
    target = m - kappa

    def fun(f: FloatArray) -> float:
        d = numpy.abs(f - (w @ f) / m)
        order = numpy.argsort(d, kind="stable")
        return first_reaching(d[order], w[order], target, m)
    return fun


def variation_objective(w: FloatArray, p: float) -> Objective:
    """variation_objective `f -> V_p(f_* mu)` on value arrays."""

    def fun(f: FloatArray) -> float:
        gap = numpy.abs(f[:, None] - f[None, :])
        return float(w @ gap ** p @ w) ** (1.0 / p)
    return fun


def _point_space(X: MMSpace, source: str) -> BoundEstimate:
    return BoundEstimate(0.0, 0.0, numpy.zeros(X.n), 0.0, source,
                         lower_source="one-point", exact=True)


def obsdiam_R(X: MMSpace, kappa: float, settings: Settings = DEFAULT,
              seed=None, verbose: bool = False) -> BoundEstimate:
    """obsdiam_R Observable diameter `ObsDiam_R(X; -kappa)`.

    lower: best partial diameter over the witness family, or
    `Sep(X; k, k)` for `k` just above `kappa`.
    upper: `Sep(X; kappa/2, kappa/2)`.
    Spaces with at most `settings.ordering_oracle_limit` points are solved
    exactly by the ordering oracle.

    Args:
        X (MMSpace): the space
        kappa (float): mass allowed outside, `0 < kappa < m`
        settings (Settings, optional): witness family and solver sizes.
            Defaults to DEFAULT.
        seed (optional): random seed or generator. Defaults to
            `settings.seed`.
        verbose (bool, optional): print progress. Defaults to False.

    Raises:
        ValueError: kappa out of range

    Returns:
        BoundEstimate
    """
    _check_open_kappa(X, kappa)
    if X.n == 1:
        return _point_space(X, "one-point")
    m = X.m
    rng = default_rng(settings.seed if seed is None else seed)
    fun = diameter_objective(X.masses, kappa)
    upper = separation(X, kappa / 2, kappa / 2, settings.exact_subset_limit)
    f, val = best_witness(X, fun, rng, settings, verbose=verbose)
    lower, lower_source = val, "witness"
    # Sep(X; k, k) bounds the observable diameter at any kappa below k
    k = kappa + 1e-9 * max(m, 1.0)
    if k < m:
        sep = separation(X, k, k, settings.exact_subset_limit)
        if sep > lower:
            lower, lower_source = sep, "separation"
    upper_source = "separation(kappa/2)"
    exact = False
    if X.n <= settings.ordering_oracle_limit:
        best, g = ordering_oracle_obsdiam(X, kappa)
        gval = fun(g)
        if gval >= val:
            f, val = g, gval
        if gval >= lower:
            lower, lower_source = gval, "ordering-lp"
        upper, upper_source = best, "ordering-lp"
        exact = True
    if verbose:
        print("obsdiam kappa {:.6g}: [{:.6g}, {:.6g}] ({} / {})".format(
            kappa, lower, upper, lower_source, upper_source), flush=True)
    return BoundEstimate(lower, upper, f, val, upper_source, lower_source,
                         exact)


def obscrad_R(X: MMSpace, kappa: float, settings: Settings = DEFAULT,
              seed=None, verbose: bool = False) -> BoundEstimate:
    """obscrad_R Observable central radius `ObsCRad_R(X; -kappa)`.

    lower: best central radius (about the mean) over the witness family.
    upper: the smallest of `ObsL1Var / (m kappa)`,
    `ObsL2Var / sqrt(2 m kappa)` (identity bounds on the variations) and the
    diameter of `X`.

    Args:
        X (MMSpace): the space
        kappa (float): mass allowed outside, `0 < kappa < m`
        settings (Settings, optional): Defaults to DEFAULT.
        seed (optional): Defaults to `settings.seed`.
        verbose (bool, optional): Defaults to False.

    Raises:
        ValueError: kappa out of range

    Returns:
        BoundEstimate
    """
    _check_open_kappa(X, kappa)
    if X.n == 1:
        return _point_space(X, "one-point")
    m = X.m
    rng = default_rng(settings.seed if seed is None else seed)
    fun = central_radius_objective(X.masses, kappa)
    f, val = best_witness(X, fun, rng, settings, verbose=verbose)
    candidates = [
        (vp(X, 1.0) / (m * kappa), "lpvar(p=1)/(m kappa)"),
        (vp(X, 2.0) / numpy.sqrt(2.0 * m * kappa),
         "lpvar(p=2)/sqrt(2 m kappa)"),
        # every value lies within diam X of the mean
        (X.diameter(), "diameter"),
    ]
    upper, upper_source = min(candidates, key=lambda c: c[0])
    if verbose:
        print("obscrad kappa {:.6g}: [{:.6g}, {:.6g}] ({})".format(
            kappa, val, upper, upper_source), flush=True)
    return BoundEstimate(val, upper, f, val, upper_source)


def obslpvar_R(X: MMSpace, p: float = 1.0, settings: Settings = DEFAULT,
               seed=None, verbose: bool = False) -> BoundEstimate:
    """obslpvar_R Observable Lp-variation `ObsLpVar_R(X)`.

    lower: best `V_p` over the witness family refined by coordinate ascent
    (`V_p` is convex, so each coordinate moves to an end of its interval);
    exact by vertex enumeration for at most `settings.vertex_oracle_limit`
    points.
    upper: `V_p` of the distance matrix itself, since
    `|f_i - f_j| <= d_ij`.

    Args:
        X (MMSpace): the space
        p (float, optional): exponent. Defaults to 1.
        settings (Settings, optional): Defaults to DEFAULT.
        seed (optional): Defaults to `settings.seed`.
        verbose (bool, optional): Defaults to False.

    Raises:
        ValueError: non-positive exponent

    Returns:
        BoundEstimate
    """
    if not p > 0:
        raise ValueError("exponent p must be positive")
    upper = vp(X, p)
    if X.n == 1:
        return _point_space(X, "identity")
    rng = default_rng(settings.seed if seed is None else seed)
    fun = variation_objective(X.masses, p)
    f, val = best_witness(X, fun, rng, settings, verbose=verbose)
    lower, lower_source, exact = val, "witness", False
    if X.n <= settings.vertex_oracle_limit:
        best, g = vertex_oracle_vp(X, p)
        gval = fun(g)
        if gval >= val:
            f, val = g, gval
            lower, lower_source = gval, "vertex-enumeration"
        exact = True
    if verbose:
        print("obslpvar p {:.6g}: [{:.6g}, {:.6g}]".format(p, lower, upper),
              flush=True)
    return BoundEstimate(lower, upper, f, val, "identity", lower_source,
                         exact)

