"""Sample drawing on concrete graphs and the matching supernode models.

Two views of sampling live here.  The ``draw_*`` operations pick real node
sets from a generated graph for empirical measurement.  The ``supernode_*``
operations compute, purely from degree distributions, the degree
distribution of the single node obtained by contracting such a sample —
what the analytical estimator consumes.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

import numpy as np

from .graphs import Graph
from .pmf import (DegenerateDistributionError, Pmf, convolution_power,
                  degree_weighted, mean, mixture, shift)

logger = logging.getLogger(__name__)

RANDOM = "random"
SNOWBALL = "snowball"
DEFAULT_RETENTION = 0.5


class SamplingExhaustedError(RuntimeError):
    """Raised when a snowball sample cannot grow to the requested size."""


@dataclass(frozen=True)
class SampleSpec:
    method: str
    size: int
    retention: float = DEFAULT_RETENTION

    def __post_init__(self):
        if self.method not in (RANDOM, SNOWBALL):
            raise ValueError(f"unknown sampling method {self.method!r}")
        if self.size < 1:
            raise ValueError(f"sample size must be >= 1, got {self.size}")
        if not 0.0 < self.retention <= 1.0:
            raise ValueError(
                f"retention must be in (0, 1], got {self.retention}")


@dataclass(frozen=True)
class SampleResult:
    """A drawn sample: sorted node ids, which of them were seeds, and the
    order in which nodes entered the sample."""

    nodes: np.ndarray
    seed_nodes: np.ndarray
    order: np.ndarray

    def __post_init__(self):
        for name in ("nodes", "seed_nodes", "order"):
            arr = np.ascontiguousarray(getattr(self, name), dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not np.array_equal(self.nodes, np.unique(self.order)):
            raise ValueError("nodes must be the sorted sampling order")
        if not np.isin(self.seed_nodes, self.nodes).all():
            raise ValueError("seed nodes must be part of the sample")

    @property
    def size(self) -> int:
        return self.nodes.shape[0]


def draw_random_sample(graph: Graph, s: int, seed: int) -> SampleResult:
    """Uniform sample of ``s`` distinct nodes; all of them count as seeds."""
    if not 1 <= s < graph.node_count:
        raise ValueError(
            f"sample size {s} must be in [1, {graph.node_count - 1}]")
    rng = np.random.default_rng(np.random.SeedSequence(seed & (2 ** 64 - 1)))
    order = rng.choice(graph.node_count, size=s, replace=False)
    nodes = np.sort(order)
    return SampleResult(nodes, nodes, order)


def draw_snowball_sample(graph: Graph, s: int, retention: float,
                         seed: int) -> SampleResult:
    """Referral-style sample grown through a FIFO frontier.

    Dequeued candidates join the sample with probability ``retention`` and
    are otherwise discarded for good; accepted nodes enqueue their
    neighbours.  When the frontier runs dry a fresh uniform seed node is
    drawn among the undecided nodes.
    """
    n = graph.node_count
    if not 1 <= s < n:
        raise ValueError(f"sample size {s} must be in [1, {n - 1}]")
    if not 0.0 < retention <= 1.0:
        raise ValueError(f"retention must be in (0, 1], got {retention}")
    rng = np.random.default_rng(np.random.SeedSequence(seed & (2 ** 64 - 1)))

    UNDECIDED, SAMPLED, DISCARDED = 0, 1, 2
    state = np.full(n, UNDECIDED, dtype=np.uint8)
    decided = 0
    order: list = []
    seeds: list = []
    frontier: deque = deque()

    def accept(node: int) -> None:
        state[node] = SAMPLED
        order.append(node)
        frontier.extend(graph.neighbors_of(node))

    while len(order) < s:
        if frontier:
            candidate = int(frontier.popleft())
            if state[candidate] != UNDECIDED:
                continue
            decided += 1
            if rng.random() < retention:
                accept(candidate)
            else:
                state[candidate] = DISCARDED
        else:
            if decided == n:
                raise SamplingExhaustedError(
                    f"all {n} nodes decided before reaching size {s}")
            while True:
                node = int(rng.integers(n))
                if state[node] == UNDECIDED:
                    break
            decided += 1
            seeds.append(node)
            accept(node)

    order_arr = np.array(order, dtype=np.int64)
    return SampleResult(np.sort(order_arr), np.array(sorted(seeds)), order_arr)


def _shift_clamped(p: Pmf, delta: int) -> Pmf:
    """Shift a pmf's support, folding any mass below zero onto degree 0."""
    if delta >= 0 or p.min_degree + delta >= 0:
        return shift(p, delta)
    if p.max_degree + delta < 0:
        raise DegenerateDistributionError(
            f"support {p.min_degree}..{p.max_degree} shifted by {delta} is "
            "entirely negative")
    split = -(p.min_degree + delta)
    clamped = float(p.probs[:split].sum())
    logger.warning(
        "shift by %d pushes %.3g probability mass below degree 0; "
        "clamping it to 0", delta, clamped)
    probs = np.concatenate([[clamped + p.probs[split]], p.probs[split + 1:]])
    return Pmf(0, probs / probs.sum())


def supernode_pmf_random(p: Pmf, s: int, tail_eps: float = 1e-12) -> Pmf:
    """Degree distribution of a contracted uniform sample of size ``s``.

    Assumes edges between sampled nodes are negligible, so the supernode
    degree is a plain sum of ``s`` independent draws.
    """
    if s < 1:
        raise ValueError(f"sample size must be >= 1, got {s}")
    return convolution_power(p, s, tail_eps)


def supernode_pmf_snowball(p: Pmf, s: int, tail_eps: float = 1e-12) -> Pmf:
    """Degree distribution of a contracted snowball sample of size ``s``.

    Nodes enter a snowball sample through an edge, so their degrees are
    size-biased, and each sampled node loses two stubs to the edge that
    recruited it (both endpoints sit inside the supernode).
    """
    if s < 1:
        raise ValueError(f"sample size must be >= 1, got {s}")
    total = convolution_power(degree_weighted(p), s, tail_eps)
    return _shift_clamped(total, -2 * s)


def within_block_reach_probability(p_w: Pmf, p_a: Pmf) -> float:
    """Probability that a snowball step enters a node via a within-block edge.

    Solves the fixed point of the two-type traversal process: conditioned on
    how the parent was reached, the parent's degrees are size-biased in that
    edge type, and the child follows a uniformly chosen remaining stub.
    """
    mean_w = mean(p_w)
    mean_a = mean(p_a)
    if mean_w == 0.0 and mean_a == 0.0:
        raise DegenerateDistributionError(
            "no edges of either type; reach probability undefined")
    if mean_a == 0.0:
        return 1.0
    if mean_w == 0.0:
        return 0.0

    def conditional(parent_w: Pmf, parent_a: Pmf, bias_within: bool) -> float:
        """P(child reached within-block | parent degrees ~ parent_w x parent_a).

        ``bias_within`` selects which stub count the traversal consumed:
        the parent spends one within stub (numerator k_w - 1) or one across
        stub (numerator k_w).
        """
        k_w = parent_w.support.astype(np.float64)
        k_a = parent_a.support.astype(np.float64)
        remaining = k_w[:, None] + k_a[None, :] - 1.0
        numer = (k_w - 1.0)[:, None] if bias_within else k_w[:, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(remaining > 0.0,
                             numer / np.where(remaining > 0.0, remaining, 1.0),
                             0.0)
        weights = parent_w.probs[:, None] * parent_a.probs[None, :]
        return float((weights * ratio).sum())

    given_within = conditional(degree_weighted(p_w), p_a, bias_within=True)
    given_across = conditional(p_w, degree_weighted(p_a), bias_within=False)
    result = given_across / (1.0 - given_within + given_across)
    return min(max(result, 0.0), 1.0)


def supernode_pmfs_sbm(method: str, p_w: Pmf, p_a: Pmf, s: int,
                       tail_eps: float = 1e-12):
    """Within/across supernode degree distributions for block graphs.

    Random sampling contracts each edge type independently.  Snowball
    sampling first weighs how the average sampled node was reached, mixes
    the size-biased (recruiting-edge-corrected) and plain distributions
    accordingly, and then contracts.
    """
    if s < 1:
        raise ValueError(f"sample size must be >= 1, got {s}")
    if method == RANDOM:
        return (convolution_power(p_w, s, tail_eps),
                convolution_power(p_a, s, tail_eps))
    if method != SNOWBALL:
        raise ValueError(f"unknown sampling method {method!r}")

    p_within_reach = within_block_reach_probability(p_w, p_a)
    if p_within_reach == 1.0:
        avg_w = _shift_clamped(degree_weighted(p_w), -2)
        avg_a = p_a
    elif p_within_reach == 0.0:
        avg_w = p_w
        avg_a = _shift_clamped(degree_weighted(p_a), -2)
    else:
        avg_w = mixture(_shift_clamped(degree_weighted(p_w), -2), p_w,
                        p_within_reach)
        avg_a = mixture(_shift_clamped(degree_weighted(p_a), -2), p_a,
                        1.0 - p_within_reach)
    return (convolution_power(avg_w, s, tail_eps),
            convolution_power(avg_a, s, tail_eps))
