"""seeded instance generators

Every generator is a function of its keyword parameters and a
`numpy.random.Generator`; `generate` builds that generator from the spec's
seed, so a spec always yields the same instance.
"""
import dataclasses
import functools
import math
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy
from scipy.spatial import distance

from .._util import MASS_RTOL, default_rng
from ..measures import AtomicMeasure, LineMeasure, MMSpace, TreeMeasure
from ..rtree import Tree, TreePoint

# the simplicial order and the neighbourhood sweep need a dense 2^n table
HYPERCUBE_MAX_DIM = 20
# dense distance matrices above this dimension do not fit comfortably
HYPERCUBE_DENSE_MAX_DIM = 12

NORMALIZATIONS = ("hamming", "mean")


@dataclasses.dataclass(frozen=True)
class InstanceSpec:
    """InstanceSpec Generator name, its parameters and the seed."""
    generator: str
    params: Dict[str, Any] = dataclasses.field(default_factory=dict)
    seed: int = 0

    @classmethod
    def parse(cls, generator: str, pairs: Sequence[str] = (),
              seed: int = 0) -> "InstanceSpec":
        """parse Build a spec from `key=value` strings (numbers are parsed,
        everything else stays a string)."""
        params = dict()
        for pair in pairs:
            if "=" not in pair:
                raise ValueError(
                    "generator parameters look like key=value, got "
                    "'{}'".format(pair))
            key, val = pair.split("=", 1)
            params[key.strip()] = _parse_value(val.strip())
        return cls(generator, params, int(seed))

    def with_params(self, **params) -> "InstanceSpec":
        merged = dict(self.params)
        merged.update(params)
        return dataclasses.replace(self, params=merged)

    def label(self) -> str:
        args = ",".join("{}={}".format(k, v)
                        for k, v in sorted(self.params.items()))
        return "{}({})#{:d}".format(self.generator, args, self.seed)

    def to_json(self) -> dict:
        return {"generator": self.generator, "params": dict(self.params),
                "seed": self.seed}


def _parse_value(val: str):
    for conv in (int, float):
        try:
            return conv(val)
        except ValueError:
            pass
    return val


@dataclasses.dataclass
class Instance:
    """Instance A generated mm-space.

    `tree` and `measure` are set when the space is the support of a tree
    measure (same point order); `target` is an extra random tree to map
    into, made when the spec asks for `tree_edges`.
    """
    spec: InstanceSpec
    space: MMSpace
    tree: Optional[Tree] = None
    measure: Optional[AtomicMeasure] = None
    target: Optional[Tree] = None

    def to_json(self) -> dict:
        out = {"spec": self.spec.to_json(), "space": self.space.to_json()}
        if self.tree is not None:
            out["tree"] = self.tree.to_json()
        if self.measure is not None:
            out["measure"] = self.measure.to_json()
        if self.target is not None:
            out["target"] = self.target.to_json()
        return out


## trees
def random_tree(n_edges: int, rng: numpy.random.Generator,
                lengths=(0.1, 2.0)) -> Tree:
    """random_tree Random recursive tree: vertex `i` hangs off a uniform
    earlier vertex, edge lengths uniform in `lengths`."""
    if n_edges < 0:
        raise ValueError("number of edges must be non-negative")
    edges = []
    for v in range(1, n_edges + 1):
        u = int(rng.integers(0, v))
        edges.append((u, v, float(rng.uniform(*lengths))))
    return Tree(list(range(n_edges + 1)), edges)


def random_tree_measure(T: Tree, n_atoms: int, rng: numpy.random.Generator,
                        vertex_share: float = 0.5) -> TreeMeasure:
    """random_tree_measure Atoms at vertices (with probability
    `vertex_share`) or uniform tree points, masses uniform in [0.1, 1]."""
    if n_atoms < 1:
        raise ValueError("need at least one atom")
    points = []
    for _ in range(n_atoms):
        if rng.uniform() < vertex_share:
            points.append(TreePoint(vertex=int(rng.integers(T.n_vertices))))
        else:
            points.append(T.random_point(rng))
    masses = rng.uniform(0.1, 1.0, size=n_atoms)
    return TreeMeasure.from_points(T, points, masses)


## mm-spaces
def hypercube_separation(n: int, k1: float, k2: float,
                         normalize: str = "hamming") -> float:
    """hypercube_separation Exact `Sep` of the uniform Hamming cube.

    By vertex isoperimetry the smallest `t`-neighbourhoods among sets of a
    given size are those of initial segments of the simplicial order
    (Hamming weight first, then the lowest differing coordinate belongs to
    the earlier word). `Sep(k1, k2)` is the largest `t` such that the
    complement of the `(t - 1)`-neighbourhood of such a segment of mass
    `k1` still carries mass `k2`.

    Args:
        n (int): dimension, `1 <= n <= 20`
        k1 (float): mass of the first set (total mass is 1)
        k2 (float): mass of the second set
        normalize (str, optional): "hamming" or "mean" (distances / n).
            Defaults to "hamming".

    Raises:
        ValueError: dimension out of range or unknown normalization

    Returns:
        float
    """
    if not 1 <= n <= HYPERCUBE_MAX_DIM:
        raise ValueError("hypercube dimension must lie in 1..{:d}".format(
            HYPERCUBE_MAX_DIM))
    if normalize not in NORMALIZATIONS:
        raise ValueError("normalize must be one of {}".format(
            ", ".join(NORMALIZATIONS)))
    N = 1 << n
    a = max(1, math.ceil(N * (k1 - MASS_RTOL)))
    b = max(1, math.ceil(N * (k2 - MASS_RTOL)))
    if a > N or b > N:
        return 0.0
    codes = numpy.arange(N)
    weight = numpy.zeros(N, dtype=int)
    rev = numpy.zeros(N, dtype=int)
    for i in range(n):
        bit = (codes >> i) & 1
        weight += bit
        rev |= bit << (n - 1 - i)
    order = numpy.lexsort((-rev, weight))
    hood = numpy.zeros(N, dtype=bool)
    hood[order[:a]] = True
    best = 0
    for t in range(1, n + 1):
        if N - int(hood.sum()) < b:
            break
        best = t
        grown = hood.copy()
        for i in range(n):
            grown |= hood[codes ^ (1 << i)]
        hood = grown
    return best / n if normalize == "mean" else float(best)


def hypercube(n: int, normalize: str = "hamming",
              rng: Optional[numpy.random.Generator] = None) -> MMSpace:
    """hypercube `{0,1}^n` with Hamming distance and uniform mass `2^-n`.

    The space carries the exact isoperimetric separation routine.
    """
    n = int(n)
    if not 1 <= n <= HYPERCUBE_DENSE_MAX_DIM:
        raise ValueError("hypercube dimension must lie in 1..{:d}".format(
            HYPERCUBE_DENSE_MAX_DIM))
    if normalize not in NORMALIZATIONS:
        raise ValueError("normalize must be one of {}".format(
            ", ".join(NORMALIZATIONS)))
    N = 1 << n
    bits = (numpy.arange(N)[:, None] >> numpy.arange(n)[None, :]) & 1
    # cdist reports the fraction of differing coordinates
    D = distance.cdist(bits, bits, metric="hamming")
    if normalize == "hamming":
        D = D * n
    ids = ["".join(str(int(b)) for b in row[::-1]) for row in bits]
    X = MMSpace(D, numpy.full(N, 1.0 / N), ids=ids)
    X.separation_fn = functools.partial(hypercube_separation, n,
                                        normalize=normalize)
    return X


def two_point(n: int, rng=None) -> MMSpace:
    """two_point Points at distance `n` with masses `1 - 1/n` and `1/n`."""
    n = int(n)
    if n < 2:
        raise ValueError("two-point family needs n >= 2")
    D = numpy.array([[0.0, float(n)], [float(n), 0.0]])
    return MMSpace(D, [1.0 - 1.0 / n, 1.0 / n], ids=["x", "y"])


def constant(n: int = 1, rng=None) -> MMSpace:
    """constant The same two-point space (masses 1/2, distance 1) for every
    `n`."""
    D = numpy.array([[0.0, 1.0], [1.0, 0.0]])
    return MMSpace(D, [0.5, 0.5], ids=["x", "y"])


def path(k: int, rng=None):
    """path `k` unit spaced atoms of mass `1/k` on a path tree."""
    k = int(k)
    if k < 1:
        raise ValueError("path needs at least one point")
    T = Tree.path([1.0] * (k - 1))
    nu = TreeMeasure(T, [T.vertex_at(v) for v in range(k)],
                     numpy.full(k, 1.0 / k))
    return T, nu


def euclidean_cloud(d: int, k: int, rng: numpy.random.Generator):
    """euclidean_cloud `k` uniform points in the unit cube of dimension `d`
    with masses uniform in [0.1, 1]."""
    d, k = int(d), int(k)
    if d < 1 or k < 1:
        raise ValueError("euclidean cloud needs d >= 1 and k >= 1")
    pos = rng.uniform(0.0, 1.0, size=(k, d))
    return LineMeasure.from_points(pos, rng.uniform(0.1, 1.0, size=k))


def random_tree_instance(edges: int, atoms: int,
                         rng: numpy.random.Generator):
    """random_tree_instance Random tree with `edges` edges carrying
    `atoms` random atoms."""
    T = random_tree(int(edges), rng)
    return T, random_tree_measure(T, int(atoms), rng)


def _space_of(nu: AtomicMeasure) -> MMSpace:
    return MMSpace(nu.distance_matrix(), nu.masses, check_triangle=False)


GENERATORS: Dict[str, Callable] = {
    "hypercube": hypercube,
    "two_point": two_point,
    "constant": constant,
    "path": path,
    "euclidean_cloud": euclidean_cloud,
    "random_tree": random_tree_instance,
}


def generate(spec: InstanceSpec) -> Instance:
    """generate Build the instance described by `spec`.

    Args:
        spec (InstanceSpec): generator name, parameters and seed; the extra
            parameter `tree_edges` adds a random target tree

    Raises:
        ValueError: unknown generator or invalid parameters

    Returns:
        Instance
    """
    if spec.generator not in GENERATORS:
        raise ValueError("unknown generator '{}' (choose from {})".format(
            spec.generator, ", ".join(sorted(GENERATORS))))
    rng = default_rng(spec.seed)
    params = dict(spec.params)
    tree_edges = params.pop("tree_edges", None)
    try:
        made = GENERATORS[spec.generator](rng=rng, **params)
    except TypeError as err:
        raise ValueError("bad parameters for generator '{}': {}".format(
            spec.generator, err))
    if isinstance(made, MMSpace):
        inst = Instance(spec, made)
    elif isinstance(made, tuple):
        T, nu = made
        inst = Instance(spec, _space_of(nu), tree=T, measure=nu)
    else:
        inst = Instance(spec, _space_of(made), measure=made)
    if tree_edges is not None:
        inst.target = random_tree(int(tree_edges), rng)
    return inst


def generate_many(spec: InstanceSpec, count: int) -> List[Instance]:
    """generate_many `count` instances with seeds `spec.seed + i`."""
    return [generate(dataclasses.replace(spec, seed=spec.seed + i))
            for i in range(count)]
