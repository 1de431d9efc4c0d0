"""Distance estimation for block-structured graphs.

Every node carries two degrees here: edges within its own block and edges
across to other blocks.  The level recursion therefore tracks two
edge-arrival values in lockstep, one per edge type, and each per-level
survival factor couples them.

With degree supports far smaller than the graph, the coupled double sums
factor exactly into products of independent single sums; that factored form
is the default.  The literal nested-sum evaluation, including its node-pool
support bounds, is kept behind the ``literal`` flag so tests can compare the
two routes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._backend import poly_eval
from .distance import DistanceDistribution
from .estimator import DepthExhaustedError, _clip_unit
from .pmf import DegenerateDistributionError, Pmf, degree_weighted, mean


@dataclass
class SbmRecursionState:
    """Per-level factors and the paired edge-arrival chains behind them."""

    n_contracted: int
    within_mean: float = 0.0
    across_mean: float = 0.0
    factors: list = field(default_factory=list)
    within_chains: list = field(default_factory=list)
    across_chains: list = field(default_factory=list)


def _sbm_polynomials(within_pmf, across_pmf, supernode_within, supernode_across):
    polys = {
        "node_w": (supernode_within.min_degree, supernode_within.probs),
        "node_a": (supernode_across.min_degree, supernode_across.probs),
        "plain_w": (within_pmf.min_degree, within_pmf.probs),
        "plain_a": (across_pmf.min_degree, across_pmf.probs),
    }
    if mean(within_pmf) > 0.0:
        weighted = degree_weighted(within_pmf)
        polys["edge_w"] = (weighted.min_degree - 1, weighted.probs)
    if mean(across_pmf) > 0.0:
        weighted = degree_weighted(across_pmf)
        polys["edge_a"] = (weighted.min_degree - 1, weighted.probs)
    return polys


def _eval(polys, name: str, t: float) -> float:
    offset, coeffs = polys[name]
    return poly_eval(coeffs, offset, t)


def _literal_pair_sum(w_support, w_exps, w_weights,
                      a_support, a_exps, a_weights,
                      t_w: float, t_a: float, bound: int) -> float:
    """Nested double sum over degree pairs with ``k_w + k_a < bound``."""
    total = 0.0
    a_powers = a_weights * np.power(t_a, a_exps.astype(np.float64))
    for k_w, e_w, weight in zip(w_support, w_exps, w_weights):
        inside = a_support < bound - k_w
        if not inside.any():
            continue
        total += weight * t_w ** float(e_w) * float(a_powers[inside].sum())
    return total


class _LiteralTerms:
    """Support/exponent/weight triples for the literal double sums."""

    def __init__(self, within_pmf, across_pmf, supernode_within,
                 supernode_across, has_within, has_across):
        def plain(p):
            return p.support, p.support, p.probs

        def edge(p):
            weighted = degree_weighted(p)
            return weighted.support, weighted.support - 1, weighted.probs

        self.node_w = plain(supernode_within)
        self.node_a = plain(supernode_across)
        self.plain_w = plain(within_pmf)
        self.plain_a = plain(across_pmf)
        self.edge_w = edge(within_pmf) if has_within else None
        self.edge_a = edge(across_pmf) if has_across else None

    def combine(self, left, right, t_w, t_a, bound):
        return _literal_pair_sum(*left, *right, t_w=t_w, t_a=t_a, bound=bound)


def estimate_dspd_sbm(within_pmf: Pmf, across_pmf: Pmf,
                      supernode_within: Pmf, supernode_across: Pmf,
                      n_contracted: int, max_depth: int = 64,
                      conv_eps: float = 1e-9,
                      state: SbmRecursionState | None = None,
                      literal: bool = False) -> DistanceDistribution:
    """Estimate distances to a contracted sample in a block-structured graph.

    ``within_pmf`` / ``across_pmf`` describe an ordinary node's within-block
    and across-block degrees; the two supernode pmfs describe the contracted
    sample the same way.  A point mass at zero for the across distributions
    reduces this exactly to the single-type estimate.
    """
    if n_contracted < 2:
        raise ValueError(f"n_contracted must be >= 2, got {n_contracted}")
    if max_depth < 1:
        raise ValueError(f"max_depth must be >= 1, got {max_depth}")
    if conv_eps <= 0.0:
        raise ValueError(f"conv_eps must be positive, got {conv_eps}")

    has_within = mean(within_pmf) > 0.0
    has_across = mean(across_pmf) > 0.0

    if state is None:
        state = SbmRecursionState(n_contracted)
    state.n_contracted = n_contracted
    state.within_mean = mean(within_pmf)
    state.across_mean = mean(across_pmf)

    if not has_within and not has_across:
        if mean(supernode_within) != 0.0 or mean(supernode_across) != 0.0:
            raise DegenerateDistributionError(
                "supernode has edges but both degree distributions are point "
                "masses at zero")
        state.factors = [1.0]
        state.within_chains = [[]]
        state.across_chains = [[]]
        return DistanceDistribution(np.array([1.0, 1.0]), 1.0)

    polys = _sbm_polynomials(within_pmf, across_pmf,
                             supernode_within, supernode_across)
    terms = _LiteralTerms(within_pmf, across_pmf, supernode_within,
                          supernode_across, has_within, has_across) \
        if literal else None

    def node_factor(t_w, t_a, bound):
        if literal:
            return terms.combine(terms.node_w, terms.node_a, t_w, t_a, bound)
        return _eval(polys, "node_w", t_w) * _eval(polys, "node_a", t_a)

    def edge_step(t_w, t_a, bound):
        """One lockstep update of the two edge-arrival values."""
        if literal:
            new_w = terms.combine(terms.edge_w, terms.plain_a,
                                  t_w, t_a, bound) if has_within else 1.0
            new_a = terms.combine(terms.plain_w, terms.edge_a,
                                  t_w, t_a, bound) if has_across else 1.0
        else:
            new_w = (_eval(polys, "edge_w", t_w) *
                     _eval(polys, "plain_a", t_a)) if has_within else 1.0
            new_a = (_eval(polys, "plain_w", t_w) *
                     _eval(polys, "edge_a", t_a)) if has_across else 1.0
        return _clip_unit(new_w), _clip_unit(new_a)

    n = n_contracted
    survival = [1.0]
    state.factors = []
    state.within_chains = []
    state.across_chains = []
    for level in range(1, max_depth + 1):
        chain_w: list = []
        chain_a: list = []
        if level == 1:
            u = 1.0 - 1.0 / (n - 1)
            factor = node_factor(u, u, n)
        else:
            if n - level < 2:
                raise DepthExhaustedError(
                    f"depth {level} needs more than {n} nodes after "
                    "contraction")
            u = 1.0 - 1.0 / (n - level)
            # The chain's base case sits in a pool shrunk by the level's
            # depth; each later step sees a pool larger by one node, and its
            # support bound tracks that pool.
            t_w, t_a = edge_step(u, u, n - level + 1)
            chain_w.append(t_w)
            chain_a.append(t_a)
            for step in range(2, level):
                t_w, t_a = edge_step(t_w, t_a, n - level + step - 1)
                chain_w.append(t_w)
                chain_a.append(t_a)
            factor = node_factor(t_w, t_a, n - 1)
        factor = _clip_unit(factor)
        state.factors.append(factor)
        state.within_chains.append(chain_w)
        state.across_chains.append(chain_a)
        survival.append(survival[-1] * factor)
        if survival[-2] - survival[-1] <= conv_eps or survival[-1] <= conv_eps:
            break

    return DistanceDistribution(np.array(survival), survival[-1])
