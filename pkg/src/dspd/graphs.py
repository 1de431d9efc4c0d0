"""Random-graph specifications, generation, and a compact adjacency type.

Three families are supported: Erdos-Renyi style binomial graphs, power-law
graphs built by stub matching and simplified afterwards, and planted-block
graphs with separate within-/across-block edge probabilities.  Generation is
deterministic given (spec, seed).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .pmf import Pmf, binomial_pmf, power_law_pmf

logger = logging.getLogger(__name__)

STUB_MATCHING_ATTEMPTS = 100


class GenerationError(RuntimeError):
    """Raised when a generator cannot produce a valid graph."""


@dataclass(frozen=True)
class BinomialGraph:
    """Every unordered node pair is an edge independently with prob. ``p``."""

    n: int
    p: float

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 nodes, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"edge probability {self.p} outside [0, 1]")

    @property
    def node_count(self) -> int:
        return self.n


@dataclass(frozen=True)
class PowerLawGraph:
    """Degrees drawn iid from p(k) proportional to k**-gamma, then matched."""

    n: int
    gamma: float
    k_min: int
    k_max: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"need at least 2 nodes, got {self.n}")
        if self.gamma < 0:
            raise ValueError(f"exponent must be non-negative, got {self.gamma}")
        if not 1 <= self.k_min <= self.k_max:
            raise ValueError(
                f"need 1 <= k_min <= k_max, got [{self.k_min}, {self.k_max}]")
        if self.k_max >= self.n:
            raise ValueError(
                f"k_max {self.k_max} must be below the node count {self.n}")

    @property
    def node_count(self) -> int:
        return self.n


@dataclass(frozen=True)
class SbmGraph:
    """``blocks`` equal blocks; denser within blocks than across them."""

    blocks: int
    block_size: int
    p_within: float
    p_across: float

    def __post_init__(self):
        if self.blocks < 1 or self.block_size < 1:
            raise ValueError("blocks and block_size must be positive")
        if self.blocks * self.block_size < 2:
            raise ValueError("need at least 2 nodes in total")
        for name, p in (("p_within", self.p_within),
                        ("p_across", self.p_across)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} {p} outside [0, 1]")
        if self.p_within < self.p_across:
            logger.warning(
                "blocks are sparser inside (%g) than across (%g); block "
                "structure is inverted", self.p_within, self.p_across)

    @property
    def node_count(self) -> int:
        return self.blocks * self.block_size

    def block_of(self, node: int) -> int:
        return node // self.block_size


GraphSpec = Union[BinomialGraph, PowerLawGraph, SbmGraph]


def degree_distributions(spec: GraphSpec,
                         tail_eps: float = 1e-12
                         ) -> Union[Pmf, Tuple[Pmf, Pmf]]:
    """Analytic degree distribution(s) implied by a graph spec.

    Block-structured specs return a (within, across) pair; the other
    families return a single pmf.
    """
    if isinstance(spec, BinomialGraph):
        return binomial_pmf(spec.n - 1, spec.p, tail_eps)
    if isinstance(spec, PowerLawGraph):
        return power_law_pmf(spec.gamma, spec.k_min, spec.k_max)
    if isinstance(spec, SbmGraph):
        within = binomial_pmf(max(spec.block_size - 1, 1), spec.p_within,
                              tail_eps) if spec.block_size > 1 \
            else Pmf(0, np.array([1.0]))
        across_pool = (spec.blocks - 1) * spec.block_size
        across = binomial_pmf(across_pool, spec.p_across, tail_eps) \
            if across_pool > 0 else Pmf(0, np.array([1.0]))
        return within, across
    raise TypeError(f"unknown graph spec {type(spec).__name__}")


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph in compressed sparse adjacency form.

    ``offsets`` has one entry per node plus one; ``neighbors[offsets[v]:
    offsets[v + 1]]`` are the sorted neighbours of ``v``.
    """

    offsets: np.ndarray
    neighbors: np.ndarray

    def __post_init__(self):
        offsets = np.ascontiguousarray(self.offsets, dtype=np.int64)
        neighbors = np.ascontiguousarray(self.neighbors, dtype=np.int32)
        if offsets.ndim != 1 or offsets.size < 2 or offsets[0] != 0:
            raise ValueError("offsets must start at 0 and cover each node")
        if offsets[-1] != neighbors.shape[0]:
            raise ValueError("offsets do not match the neighbor array")
        offsets.setflags(write=False)
        neighbors.setflags(write=False)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "neighbors", neighbors)

    @property
    def node_count(self) -> int:
        return self.offsets.shape[0] - 1

    @property
    def edge_count(self) -> int:
        return self.neighbors.shape[0] // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, node: int) -> np.ndarray:
        return self.neighbors[self.offsets[node]:self.offsets[node + 1]]


def _csr_from_edges(n: int, edges: np.ndarray) -> Graph:
    """Build adjacency from unique undirected edges (m, 2), u < v."""
    if edges.size == 0:
        return Graph(np.zeros(n + 1, dtype=np.int64),
                     np.empty(0, dtype=np.int32))
    both = np.concatenate([edges, edges[:, ::-1]])
    order = np.lexsort((both[:, 1], both[:, 0]))
    neighbors = both[order, 1].astype(np.int32)
    counts = np.bincount(both[:, 0], minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return Graph(offsets, neighbors)


def _pairs_from_indices(idx: np.ndarray, n: int) -> np.ndarray:
    """Decode linear indices over unordered pairs of ``n`` nodes to (u, v).

    Pairs are ordered (0,1), (0,2), ..., (0,n-1), (1,2), ...; index t maps
    to the row u whose block of pairs contains t, found in closed form and
    then nudged to undo float rounding.
    """
    t = idx.astype(np.int64)
    b = 2 * n - 1
    u = np.floor((b - np.sqrt(b * b - 8.0 * t.astype(np.float64))) / 2.0)
    u = u.astype(np.int64)
    np.clip(u, 0, n - 2, out=u)

    def row_start(rows):
        return rows * (b - rows) // 2

    for _ in range(3):
        too_far = row_start(u) > t
        u[too_far] -= 1
        not_far_enough = row_start(u + 1) <= t
        u[not_far_enough] += 1
        if not (too_far.any() or not_far_enough.any()):
            break
    v = t - row_start(u) + u + 1
    return np.column_stack([u, v])


def _sample_pair_indices(total: int, p: float, rng) -> np.ndarray:
    """Indices of Bernoulli(p) successes among ``total`` slots.

    Walks the slots by geometric jumps, so the cost scales with the number
    of successes rather than with ``total``.
    """
    if total <= 0 or p <= 0.0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(total, dtype=np.int64)
    out = []
    position = -1
    batch = int(total * p * 1.1) + 32
    while position < total:
        jumps = rng.geometric(p, size=batch)
        positions = position + np.cumsum(jumps)
        out.append(positions[positions < total])
        if positions[-1] >= total:
            break
        position = int(positions[-1])
    return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def _generate_binomial(spec: BinomialGraph, rng) -> Graph:
    total = spec.n * (spec.n - 1) // 2
    idx = _sample_pair_indices(total, spec.p, rng)
    return _csr_from_edges(spec.n, _pairs_from_indices(idx, spec.n))


def _generate_power_law(spec: PowerLawGraph, rng) -> Graph:
    pmf = power_law_pmf(spec.gamma, spec.k_min, spec.k_max)
    degrees = None
    for _ in range(STUB_MATCHING_ATTEMPTS):
        candidate = rng.choice(pmf.support, size=spec.n, p=pmf.probs)
        if candidate.sum() % 2 == 0:
            degrees = candidate
            break
    if degrees is None:
        raise GenerationError(
            f"no even-sum degree sequence in {STUB_MATCHING_ATTEMPTS} draws")
    stubs = np.repeat(np.arange(spec.n, dtype=np.int64), degrees)
    rng.shuffle(stubs)
    u = stubs[0::2]
    v = stubs[1::2]
    keep = u != v  # drop self-loops
    lo = np.minimum(u[keep], v[keep])
    hi = np.maximum(u[keep], v[keep])
    unique_keys = np.unique(lo * spec.n + hi)  # drop parallel edges
    edges = np.column_stack([unique_keys // spec.n, unique_keys % spec.n])
    return _csr_from_edges(spec.n, edges)


def _generate_sbm(spec: SbmGraph, rng) -> Graph:
    n = spec.node_count
    size = spec.block_size
    per_block = size * (size - 1) // 2

    # Within-block edges: one Bernoulli stream over all blocks' pair slots.
    if per_block > 0:
        idx = _sample_pair_indices(spec.blocks * per_block, spec.p_within, rng)
        local = _pairs_from_indices(idx % per_block, size)
        base = (idx // per_block)[:, None] * size
        within = local + base
    else:
        within = np.empty((0, 2), dtype=np.int64)

    # Across-block edges: thin a whole-graph stream down to mixed pairs.
    idx = _sample_pair_indices(n * (n - 1) // 2, spec.p_across, rng)
    pairs = _pairs_from_indices(idx, n)
    mixed = (pairs[:, 0] // size) != (pairs[:, 1] // size)
    across = pairs[mixed]

    return _csr_from_edges(n, np.concatenate([within, across]))


def generate(spec: GraphSpec, seed: int) -> Graph:
    """Generate a graph from its spec, deterministically in the seed."""
    rng = np.random.default_rng(np.random.SeedSequence(seed & (2 ** 64 - 1)))
    if isinstance(spec, BinomialGraph):
        return _generate_binomial(spec, rng)
    if isinstance(spec, PowerLawGraph):
        return _generate_power_law(spec, rng)
    if isinstance(spec, SbmGraph):
        return _generate_sbm(spec, rng)
    raise TypeError(f"unknown graph spec {type(spec).__name__}")


def dump_edge_list(graph: Graph, path) -> None:
    """Write ``"N M"`` then one ``"u v"`` line per undirected edge."""
    n = graph.node_count
    sources = np.repeat(np.arange(n, dtype=np.int64), graph.degrees())
    forward = sources < graph.neighbors
    edges = np.column_stack([sources[forward], graph.neighbors[forward]])
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{n} {edges.shape[0]}\n")
        np.savetxt(fh, edges, fmt="%d %d")


def load_edge_list(path) -> Graph:
    """Read a graph written by :func:`dump_edge_list`."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("expected 'N M' header line")
        n, m = int(header[0]), int(header[1])
        if m > 0:
            edges = np.loadtxt(fh, dtype=np.int64, ndmin=2)
        else:
            edges = np.empty((0, 2), dtype=np.int64)
    if edges.shape[0] != m or (edges.size and edges.shape[1] != 2):
        raise ValueError(f"header promised {m} edges, file has {edges.shape[0]}")
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise ValueError("edge endpoints outside the node range")
    lo = np.minimum(edges[:, 0], edges[:, 1])
    hi = np.maximum(edges[:, 0], edges[:, 1])
    if np.any(lo == hi):
        raise ValueError("self-loops are not allowed")
    keys = np.unique(lo * n + hi)
    if keys.size != m:
        raise ValueError("duplicate edges in file")
    return _csr_from_edges(n, np.column_stack([keys // n, keys % n]))
