"""1-Lipschitz witness functions on a finite mm-space

The sup-type functionals are bounded from below by evaluating them on a
family of 1-Lipschitz functions: signed distance functions, McShane
extensions of random boundary data and coordinate ascent on the Lipschitz
polytope `{f : |f_i - f_j| <= d_ij}`.
"""
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy

from ..config import DEFAULT, Settings
from ..measures import LipschitzFunction, MMSpace, lipschitz_violation
from ..typing import FloatArray

Objective = Callable[[FloatArray], float]


def mcshane_values(D: FloatArray, A: Sequence[int],
                   f_A: FloatArray) -> FloatArray:
    """mcshane_values `min_a (f_A(a) + d(x, a))` for every point `x`."""
    A = numpy.asarray(A, dtype=int)
    vals = (numpy.asarray(f_A, dtype=float)[None, :] + D[:, A]).min(axis=1)
    vals[A] = f_A
    return vals


def mcshane_extension(X: MMSpace, A: Sequence[int], f_A,
                      tol: float = 1e-9) -> LipschitzFunction:
    """mcshane_extension Largest 1-Lipschitz extension of `f_A` to `X`.

    Args:
        X (MMSpace): the space
        A (Sequence[int]): indices of the points carrying data
        f_A (Sequence[float]): values on `A`
        tol (float, optional): allowed Lipschitz violation.
            Defaults to 1e-9.

    Raises:
        ValueError: empty or invalid `A`, or `f_A` not 1-Lipschitz on `A`

    Returns:
        LipschitzFunction
    """
    A = numpy.asarray(A, dtype=int).ravel()
    f_A = numpy.asarray(f_A, dtype=float).ravel()
    if A.size == 0:
        raise ValueError("extension needs at least one data point")
    if len(f_A) != len(A):
        raise ValueError("need one value per data point")
    if A.min() < 0 or A.max() >= X.n or len(numpy.unique(A)) != len(A):
        raise ValueError("data points must be distinct indices of the space")
    viol = lipschitz_violation(X.dist[numpy.ix_(A, A)], f_A)
    if viol > tol:
        raise ValueError(
            "boundary data is not 1-Lipschitz (violation {:.3g})".format(viol))
    return LipschitzFunction(X, mcshane_values(X.dist, A, f_A), tol=tol)


def lipschitz_repair(D: FloatArray, values: FloatArray) -> FloatArray:
    """lipschitz_repair Largest 1-Lipschitz function below `values`."""
    return (values[None, :] + D).min(axis=1)


def random_boundary(D: FloatArray, rng: numpy.random.Generator
                    ) -> Tuple[FloatArray, FloatArray]:
    """random_boundary Random data set and 1-Lipschitz data on it."""
    n = D.shape[0]
    size = int(rng.integers(1, n + 1))
    A = numpy.sort(rng.choice(n, size=size, replace=False))
    scale = float(D.max()) if n > 1 else 1.0
    u = rng.uniform(-scale, scale, size=size)
    return A, lipschitz_repair(D[numpy.ix_(A, A)], u)


def coordinate_ascent(D: FloatArray, values: FloatArray, fun: Objective,
                      sweeps: int = 8,
                      rng: Optional[numpy.random.Generator] = None
                      ) -> Tuple[FloatArray, float]:
    """coordinate_ascent Push single coordinates to the ends of their
    feasible interval while that improves `fun`.

    With all other values fixed, `f_i` may range over
    `[max_j (f_j - d_ij), min_j (f_j + d_ij)]`; for convex objectives the
    best choice is one of the two ends.

    Args:
        D (FloatArray): distance matrix
        values (FloatArray): 1-Lipschitz starting point
        fun (Objective): function of the values to maximize
        sweeps (int, optional): passes over all coordinates. Defaults to 8.
        rng (numpy.random.Generator, optional): shuffles the coordinate
            order. Defaults to None (index order).

    Returns:
        Tuple[FloatArray, float]: best values and their objective
    """
    f = numpy.array(values, dtype=float)
    n = len(f)
    best = fun(f)
    if n < 2:
        return f, best
    for _ in range(sweeps):
        improved = False
        order = rng.permutation(n) if rng is not None else range(n)
        for i in order:
            others = numpy.arange(n) != i
            lo = float((f[others] - D[i, others]).max())
            hi = float((f[others] + D[i, others]).min())
            old = f[i]
            for cand in (lo, hi):
                if abs(cand - old) <= 1e-15 * max(1.0, abs(old)):
                    continue
                f[i] = cand
                val = fun(f)
                if val > best + 1e-12 * max(1.0, abs(best)):
                    best, old, improved = val, cand, True
            f[i] = old
        if not improved:
            break
    return f, best


def witness_family(X: MMSpace, rng: numpy.random.Generator,
                   settings: Settings = DEFAULT) -> Iterator[FloatArray]:
    """witness_family Candidate 1-Lipschitz functions (as value arrays).

    Yields `+d(., x0)` and `-d(., x0)` for the base points (all points, or a
    random selection of `settings.witness_base_points`), then McShane
    extensions of `settings.witness_mcshane` random boundary data sets.
    """
    D = X.dist
    n = X.n
    k = settings.witness_base_points
    if k <= 0 or k >= n:
        base = range(n)
    else:
        base = numpy.sort(rng.choice(n, size=k, replace=False))
    for x0 in base:
        yield D[x0].copy()
        yield -D[x0]
    for _ in range(settings.witness_mcshane):
        A, f_A = random_boundary(D, rng)
        yield mcshane_values(D, A, f_A)


def best_witness(X: MMSpace, fun: Objective, rng: numpy.random.Generator,
                 settings: Settings = DEFAULT,
                 verbose: bool = False) -> Tuple[FloatArray, float]:
    """best_witness Maximize `fun` over the witness family and refine the
    best candidates by coordinate ascent.

    Returns:
        Tuple[FloatArray, float]: values of the best function found (exactly
            1-Lipschitz up to rounding) and its objective
    """
    D = X.dist
    best_f, best = numpy.zeros(X.n), fun(numpy.zeros(X.n))
    count = 0
    for f in witness_family(X, rng, settings):
        val = fun(f)
        count += 1
        if val > best:
            best_f, best = f, val
    if settings.ascent_sweeps > 0:
        best_f, best = coordinate_ascent(D, best_f, fun,
                                         settings.ascent_sweeps, rng)
    for _ in range(settings.witness_restarts):
        A, f_A = random_boundary(D, rng)
        f, val = coordinate_ascent(D, mcshane_values(D, A, f_A), fun,
                                   settings.ascent_sweeps, rng)
        count += 1
        if val > best:
            best_f, best = f, val
    if verbose:
        print("evaluated {:d} witnesses, best {:.6g}".format(count, best),
              flush=True)
    return best_f, best
