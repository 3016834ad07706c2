"""private utilities
"""
import json
import os
import multiprocessing
import concurrent.futures
from contextlib import nullcontext
from typing import Any, Callable, Iterable, List, Optional, Sequence

import numpy
from tqdm.auto import tqdm

from .typing import FloatArray


# relative slack applied to every "mass >= target" comparison
# (sums like 8 * 0.1 fall just short of 0.8 in floating point)
MASS_RTOL = 1e-12


def mass_slack(m: float) -> float:
    """mass_slack Absolute slack for mass comparisons at total mass `m`.

    Args:
        m (float): total mass

    Returns:
        float
    """
    return MASS_RTOL * max(abs(m), 1.0)


def reaches(mass, target: float, m: float):
    """reaches Closed comparison `mass >= target` with floating slack.

    Args:
        mass (float or FloatArray): accumulated mass(es)
        target (float): required mass
        m (float): total mass of the measure, sets the slack scale

    Returns:
        bool or boolean array
    """
    return mass >= target - mass_slack(m)


def default_rng(seed) -> numpy.random.Generator:
    """default_rng Pass generators through, build one from anything else.

    Args:
        seed (int, None or numpy.random.Generator): seed or generator

    Returns:
        numpy.random.Generator
    """
    if isinstance(seed, numpy.random.Generator):
        return seed
    return numpy.random.default_rng(seed)


def first_reaching(sorted_vals: FloatArray, weights: FloatArray,
                   target: float, m: float) -> float:
    """first_reaching Smallest value whose cumulative weight reaches target.

    Values must be sorted ascending; weights are aligned with them.

    Args:
        sorted_vals (FloatArray): ascending values
        weights (FloatArray): weight attached to each value
        target (float): mass to accumulate
        m (float): total mass (slack scale)

    Returns:
        float: the value, or `nan` if the target is never reached
    """
    cum = numpy.cumsum(weights)
    ok = numpy.flatnonzero(reaches(cum, target, m))
    if ok.size == 0:
        return numpy.nan
    return float(sorted_vals[ok[0]])


def map_in_pool(fun: Callable, items: Sequence[Any], workers: int = 1,
                verbose: bool = False, desc: Optional[str] = None) -> List:
    """map_in_pool Evaluate `fun` on every item, in a process pool if asked.

    Results come back in the order of `items` regardless of completion
    order. With `workers <= 1` everything runs in this process.

    Args:
        fun (Callable): picklable single-argument function
        items (Sequence): arguments
        workers (int, optional): number of worker processes. Defaults to 1.
        verbose (bool, optional): show a progress bar. Defaults to False.
        desc (str, optional): progress bar label. Defaults to None.

    Returns:
        List: `[fun(item) for item in items]`
    """
    out = [None for _ in items]
    if workers <= 1:
        pbar = tqdm(total=len(items), desc=desc) if verbose else nullcontext()
        with pbar:
            for idx, item in enumerate(items):
                out[idx] = fun(item)
                if verbose:
                    pbar.update(1)
        return out
    with concurrent.futures.ProcessPoolExecutor(
        max_workers=workers, mp_context=multiprocessing.get_context("spawn")
    ) as executor:
        future_to_idx = dict()
        for idx, item in enumerate(items):
            future_to_idx[executor.submit(fun, item)] = idx
        iterator = concurrent.futures.as_completed(future_to_idx)
        if verbose:
            iterator = tqdm(iterator, total=len(future_to_idx), desc=desc)
        for future in iterator:
            out[future_to_idx[future]] = future.result()
    return out


class NumpyArrayEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, numpy.ndarray):
            return obj.tolist()
        elif isinstance(obj, numpy.floating):
            return float(obj)
        elif isinstance(obj, numpy.integer):
            return int(obj)
        elif isinstance(obj, numpy.bool_):
            return bool(obj)
        elif hasattr(obj, "to_json"):
            return obj.to_json()
        return super().default(obj)


def dumps(obj, indent: Optional[int] = 2) -> str:
    return json.dumps(obj, cls=NumpyArrayEncoder, indent=indent)


def read_json(path: os.PathLike):
    """read_json Load a JSON document from `path` ("-" is not supported).

    Args:
        path (os.PathLike): file to read

    Raises:
        ValueError: file does not exist

    Returns:
        parsed document
    """
    if not os.path.exists(path):
        raise ValueError("input file does not exist: {}".format(path))
    with open(path, "r") as fh:
        return json.load(fh)


def write_json(obj, path: os.PathLike):
    with open(path, "w") as fh:
        fh.write(dumps(obj))


def as_float_list(vals: Iterable[float]) -> List[float]:
    return [float(v) for v in vals]
