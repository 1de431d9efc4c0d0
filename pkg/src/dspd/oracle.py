"""Empirical distance distributions measured by breadth-first search.

This is the ground truth the analytical estimator is judged against: take a
concrete graph and a concrete sample, run a multi-source BFS from the whole
sample at once, and histogram the distances of the non-sampled nodes.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ._backend import bfs_distances
from .distance import DistanceDistribution
from .graphs import Graph
from .sampling import SampleResult


def bfs_dspd(graph: Graph, sample: SampleResult) -> DistanceDistribution:
    """Distance distribution from non-sampled nodes to the sample.

    Unreachable nodes make up the residual mass.
    """
    n = graph.node_count
    if sample.size == 0:
        raise ValueError("sample is empty")
    if sample.size >= n:
        raise ValueError("sample covers the whole graph; no source nodes left")
    if sample.nodes.min() < 0 or sample.nodes.max() >= n:
        raise ValueError("sample contains node ids outside the graph")

    sources = sample.nodes.astype(np.int32)
    dist = np.asarray(bfs_distances(graph.offsets, graph.neighbors, sources, n))

    outside = np.ones(n, dtype=bool)
    outside[sample.nodes] = False
    dist = dist[outside]
    total = dist.shape[0]

    reached = dist[dist >= 0]
    residual = 1.0 - reached.shape[0] / total
    if reached.shape[0] == 0:
        return DistanceDistribution(np.array([1.0]), 1.0)
    counts = np.bincount(reached)
    pmf = counts / total
    return DistanceDistribution.from_pmf(pmf, residual)


def average_dspd(trials: Sequence[DistanceDistribution]) -> DistanceDistribution:
    """Pointwise average of several distance distributions.

    Pmfs are zero-padded to a common length; residuals average too, so the
    result is again a proper distribution.
    """
    if len(trials) == 0:
        raise ValueError("need at least one distribution to average")
    length = max(t.max_distance for t in trials) + 1
    stacked = np.zeros((len(trials), length))
    for i, trial in enumerate(trials):
        pmf = trial.pmf()
        stacked[i, :pmf.shape[0]] = pmf
    residual = float(np.mean([t.residual for t in trials]))
    return DistanceDistribution.from_pmf(stacked.mean(axis=0), residual)
