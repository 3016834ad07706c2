"""decay tables for families of spaces indexed by n
"""
import dataclasses
import os
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas

from .._util import map_in_pool
from ..config import DEFAULT, Settings
from ..measures import separation
from ..observable import obscrad_R, obsdiam_R, obslpvar_R
from .checks import CheckReport
from .generators import constant, hypercube, two_point

FAMILIES = ("hypercube", "two_point", "constant")
LEVY_COLUMNS = ["family", "n", "points", "kappa", "sep", "obsdiam_lower",
                "obsdiam_upper", "obscrad_lower", "obscrad_upper",
                "obsvar_lower", "obsvar_upper"]
# the hypercube is reported with normalized distances, the n-th member of
# every family has total mass 1
_BUILDERS = {
    "hypercube": lambda n: hypercube(n, normalize="mean"),
    "two_point": two_point,
    "constant": constant,
}


@dataclasses.dataclass
class _LevyRow:
    family: str
    kappa: float
    settings: Settings
    seed: int

    def __call__(self, n: int) -> dict:
        X = _BUILDERS[self.family](n)
        kappa = self.kappa * X.m
        od = obsdiam_R(X, kappa, self.settings, self.seed)
        oc = obscrad_R(X, kappa, self.settings, self.seed)
        ov = obslpvar_R(X, 2.0, self.settings, self.seed)
        return {
            "family": self.family, "n": int(n), "points": X.n,
            "kappa": kappa,
            "sep": separation(X, kappa, kappa,
                              self.settings.exact_subset_limit),
            "obsdiam_lower": od.lower, "obsdiam_upper": od.upper,
            "obscrad_lower": oc.lower, "obscrad_upper": oc.upper,
            "obsvar_lower": ov.lower, "obsvar_upper": ov.upper,
        }


def levy_report(family: str, n_values: Sequence[int], kappa: float = 0.1,
                settings: Optional[Settings] = None, seed: int = 0,
                workers: int = 1, verbose: bool = False
                ) -> Tuple[pandas.DataFrame, CheckReport]:
    """levy_report Separation and R-screen bounds along a family.

    Args:
        family (str): "hypercube" (distances divided by n), "two_point" or
            "constant"
        n_values (Sequence[int]): family parameters, increasing
        kappa (float, optional): mass level as a fraction of the total.
            Defaults to 0.1.
        settings (Settings, optional): Defaults to the light witness
            configuration.
        seed (int, optional): Defaults to 0.
        workers (int, optional): worker processes. Defaults to 1.
        verbose (bool, optional): progress bar. Defaults to False.

    Raises:
        ValueError: unknown family, empty or unsorted range, bad kappa

    Returns:
        Tuple[pandas.DataFrame, CheckReport]: one row per n, and the
            sandwich and decay checks
    """
    if family not in FAMILIES:
        raise ValueError("unknown family '{}' (choose from {})".format(
            family, ", ".join(FAMILIES)))
    n_values = [int(n) for n in n_values]
    if not n_values or any(b <= a for a, b in zip(n_values, n_values[1:])):
        raise ValueError("family parameters must be a nonempty increasing "
                         "sequence")
    if not 0 < kappa < 1:
        raise ValueError("kappa must lie in (0, 1)")
    if settings is None:
        settings = DEFAULT.light()
    rows = map_in_pool(_LevyRow(family, kappa, settings, seed), n_values,
                       workers=workers, verbose=verbose, desc=family)
    frame = pandas.DataFrame(rows, columns=LEVY_COLUMNS)

    report = CheckReport(tol=settings.check_tol, seed=seed)
    label = "levy/{}".format(family)
    for row in rows:
        tag = "{}/n={:d}".format(label, row["n"])
        report.add(tag, "obsdiam_sandwich", "ObsDiam lower <= ObsDiam upper",
                   row["obsdiam_lower"], row["obsdiam_upper"],
                   kappa=row["kappa"])
        report.add(tag, "obscrad_sandwich", "ObsCRad lower <= ObsCRad upper",
                   row["obscrad_lower"], row["obscrad_upper"],
                   kappa=row["kappa"])
        report.add(tag, "obsvar_sandwich",
                   "ObsL2Var lower <= ObsL2Var upper", row["obsvar_lower"],
                   row["obsvar_upper"], p=2.0)
    if family == "hypercube":
        sep = dict(zip(frame["n"], frame["sep"]))
        tail = [n for n in n_values if n >= 4]
        for a, b in zip(tail, tail[1:]):
            report.add("{}/n={:d}".format(label, b), "sep_non_increasing",
                       "Sep(X_n+1; k, k) <= Sep(X_n; k, k)", sep[b], sep[a],
                       kappa=kappa, gating=False)
        if len(tail) >= 2:
            report.add("{}/n={:d}".format(label, tail[-1]), "sep_decays",
                       "Sep(X_nmax; k, k) < Sep(X_4; k, k)", sep[tail[-1]],
                       sep[tail[0]], kappa=kappa, strict=True)
    return frame, report


def write_levy_svg(frame: pandas.DataFrame, path: os.PathLike,
                   title: Optional[str] = None):
    """write_levy_svg Line chart of the columns of a Levy table against n.

    The output depends only on the data (fixed hash salt, no date).
    """
    matplotlib.rcParams["svg.hashsalt"] = "treeconc"
    fig, ax = plt.subplots(figsize=(6, 4))
    n = frame["n"].to_numpy()
    ax.plot(n, frame["sep"], "o-", label="Sep(k, k)")
    ax.plot(n, frame["obsdiam_upper"], "s--", label="ObsDiam upper")
    ax.plot(n, frame["obsdiam_lower"], "s:", label="ObsDiam lower")
    ax.plot(n, frame["obscrad_lower"], "^-", label="ObsCRad lower")
    ax.set_xlabel("n")
    ax.set_ylabel("distance")
    if title is None and len(frame):
        title = "{} family, kappa = {:.3g}".format(
            frame["family"].iloc[0], frame["kappa"].iloc[0])
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
