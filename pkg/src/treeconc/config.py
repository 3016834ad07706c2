"""configuration loading
"""
import os
import dataclasses
from fractions import Fraction
from typing import Optional, Tuple

import yaml

_DEFAULT_PATH = os.path.join(os.path.dirname(__file__), "default.yaml")


@dataclasses.dataclass(frozen=True)
class Settings:
    geometry_tol: float = 1e-12
    lipschitz_tol: float = 1e-9
    check_tol: float = 1e-9
    witness_base_points: int = 0
    witness_mcshane: int = 64
    witness_restarts: int = 16
    ascent_sweeps: int = 8
    exact_subset_limit: int = 14
    ordering_oracle_limit: int = 6
    vertex_oracle_limit: int = 6
    dense_vertex_limit: int = 2048
    l1_max_atoms: int = 14
    kappa_grid: Tuple[float, ...] = (0.05, 0.1, 0.2, 1 / 3, 0.45)
    p_grid: Tuple[float, ...] = (1.0, 2.0, 3.0)
    barycenter_max_iter: int = 0
    workers: int = 1
    seed: int = 0

    def replace(self, **kwargs) -> "Settings":
        return load_config(None, base=self, **kwargs)

    def light(self) -> "Settings":
        """light Witness configuration for large spaces (distance functions
        from four base points only)."""
        return self.replace(witness_base_points=4, witness_mcshane=0,
                            witness_restarts=0, ascent_sweeps=0)


def _parse_number(val) -> float:
    # grids may hold fractions written as strings, e.g. "1/3"
    if isinstance(val, str):
        return float(Fraction(val.strip()))
    return float(val)


def _coerce(name: str, val):
    field = Settings.__dataclass_fields__[name]
    if name in ("kappa_grid", "p_grid"):
        if isinstance(val, (int, float, str)):
            val = [val]
        return tuple(_parse_number(v) for v in val)
    if field.type in (int, "int"):
        return int(val)
    if field.type in (float, "float"):
        return _parse_number(val)
    return val


def load_config(path: Optional[os.PathLike] = None,
                base: Optional[Settings] = None, **overrides) -> Settings:
    """load_config Build settings from the packaged defaults, a user file
    and keyword overrides (later sources win).

    Args:
        path (os.PathLike, optional): user yaml file. Defaults to None.
        base (Settings, optional): start from these settings instead of the
            packaged defaults. Defaults to None.
        **overrides: individual keys; `None` values are ignored

    Raises:
        ValueError: unknown key, or a file that is not a yaml mapping

    Returns:
        Settings
    """
    if base is None:
        with open(_DEFAULT_PATH, "r") as fh:
            values = yaml.safe_load(fh) or {}
    else:
        values = dataclasses.asdict(base)
    if path is not None:
        if not os.path.exists(path):
            raise ValueError("config file does not exist: {}".format(path))
        with open(path, "r") as fh:
            user = yaml.safe_load(fh) or {}
        if not isinstance(user, dict):
            raise ValueError("config file must contain a mapping")
        values.update(user)
    values.update({k: v for k, v in overrides.items() if v is not None})
    known = set(Settings.__dataclass_fields__.keys())
    unknown = sorted(set(values.keys()) - known)
    if unknown:
        raise ValueError("unknown config keys: {}".format(", ".join(unknown)))
    return Settings(**{k: _coerce(k, v) for k, v in values.items()})


DEFAULT = Settings()
