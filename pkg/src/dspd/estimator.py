"""Analytical shortest-path distance estimation for configuration-model graphs.

Given the degree distribution of a graph and the degree distribution of a
contracted sample supernode, estimates the distribution of distances from a
uniformly chosen non-sampled node to the sample without generating any graph.

The estimate is built level by level.  The survival probability at distance
``l`` is a product of per-level factors; the factor for level ``l`` is the
probability that none of the supernode's neighbourhoods at depth ``l`` reach
the source, obtained by iterating an edge-arrival map that tracks how likely
an edge is to lead away from the source in progressively smaller node pools.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import poly_eval
from .distance import DistanceDistribution
from .pmf import DegenerateDistributionError, Pmf, degree_weighted, mean

DEFAULT_MAX_DEPTH = 64
DEFAULT_CONV_EPS = 1e-9


class DepthExhaustedError(RuntimeError):
    """Raised when the node pool is too small for the requested depth."""


@dataclass
class RecursionState:
    """Intermediate values of the level recursion, kept for inspection.

    ``factors[i]`` is the conditional survival factor P(d > i+1 | d > i).
    ``edge_chains[i]`` holds the edge-arrival probabilities feeding that
    factor, ordered from the chain's base case up; level 1 has no chain.
    """

    n_contracted: int
    factors: list = field(default_factory=list)
    edge_chains: list = field(default_factory=list)


def _clip_unit(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


def _edge_polynomial(p: Pmf):
    """Coefficients of sum_k (k p(k) / c) t^(k-1) as (offset, coeffs)."""
    weighted = degree_weighted(p)
    return weighted.min_degree - 1, weighted.probs


def _node_polynomial(p: Pmf):
    """Coefficients of sum_k p(k) t^k as (offset, coeffs)."""
    return p.min_degree, p.probs


def estimate_dspd(degree_pmf: Pmf, supernode_pmf: Pmf, n_contracted: int,
                  max_depth: int = DEFAULT_MAX_DEPTH,
                  conv_eps: float = DEFAULT_CONV_EPS,
                  state: RecursionState | None = None) -> DistanceDistribution:
    """Estimate distances from a random non-sampled node to the supernode.

    ``degree_pmf`` is the degree distribution of ordinary nodes,
    ``supernode_pmf`` the degree distribution of the contracted sample, and
    ``n_contracted`` the number of nodes after contraction.  Levels are added
    until the survival probability moves by at most ``conv_eps`` or
    ``max_depth`` is reached; the final survival value is reported as the
    residual (unreachable / beyond-range) mass.

    Pass a fresh ``state`` to capture every per-level factor and the
    edge-arrival chains behind them.
    """
    if n_contracted < 2:
        raise ValueError(f"n_contracted must be >= 2, got {n_contracted}")
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    if conv_eps <= 0.0:
        raise ValueError(f"conv_eps must be positive, got {conv_eps}")

    if state is None:
        state = RecursionState(n_contracted)
    else:
        state.n_contracted = n_contracted

    if mean(degree_pmf) == 0.0:
        # Isolated-node graph: nothing is ever reached.  Only coherent when
        # the contracted sample has no edges either.
        if mean(supernode_pmf) != 0.0:
            raise DegenerateDistributionError(
                "supernode has edges but the degree distribution is a point "
                "mass at zero")
        state.factors = [1.0]
        state.edge_chains = [[]]
        return DistanceDistribution(np.array([1.0, 1.0]), 1.0)

    node_offset, node_coeffs = _node_polynomial(supernode_pmf)
    edge_offset, edge_coeffs = _edge_polynomial(degree_pmf)

    survival = [1.0]
    state.factors = []
    state.edge_chains = []
    for level in range(1, max_depth + 1):
        chain: list = []
        if level == 1:
            t = 1.0 - 1.0 / (n_contracted - 1)
        else:
            if n_contracted - level < 2:
                raise DepthExhaustedError(
                    f"depth {level} needs more than {n_contracted} nodes "
                    "after contraction")
            # Each survival level runs its own edge-arrival chain: the base
            # case lives in a pool shrunk by the level's depth, and every
            # iteration feeds a pool larger by one node.
            t = _clip_unit(poly_eval(edge_coeffs, edge_offset,
                                     1.0 - 1.0 / (n_contracted - level)))
            chain.append(t)
            for _ in range(level - 2):
                t = _clip_unit(poly_eval(edge_coeffs, edge_offset, t))
                chain.append(t)
        factor = _clip_unit(poly_eval(node_coeffs, node_offset, t))
        state.factors.append(factor)
        state.edge_chains.append(chain)
        survival.append(survival[-1] * factor)
        # Converged once a level barely moves the survival probability, or
        # once survival itself is below the tolerance (no later level can
        # shift the distribution by more than that).
        if survival[-2] - survival[-1] <= conv_eps or survival[-1] <= conv_eps:
            break

    return DistanceDistribution(np.array(survival), survival[-1])


def estimate_single_node(degree_pmf: Pmf, n_nodes: int,
                         max_depth: int = DEFAULT_MAX_DEPTH,
                         conv_eps: float = DEFAULT_CONV_EPS,
                         state: RecursionState | None = None
                         ) -> DistanceDistribution:
    """Distance distribution between two random nodes of one graph.

    A sample of size one leaves the graph uncontracted and makes the
    "supernode" an ordinary node, so this is the general estimate with the
    degree distribution playing both roles.
    """
    return estimate_dspd(degree_pmf, degree_pmf, n_nodes,
                         max_depth=max_depth, conv_eps=conv_eps, state=state)
