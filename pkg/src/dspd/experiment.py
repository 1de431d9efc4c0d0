"""Experiment orchestration: estimates, empirical protocols, benchmarks.

The empirical protocol mirrors the evaluation design: generate a handful of
graphs per setting, draw many samples on each, measure the distance
distribution per trial by BFS, and score the analytical estimate by the
per-trial earth-mover distance.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .distance import DistanceDistribution
from .estimator import estimate_dspd
from .graphs import (Graph, GraphSpec, SbmGraph, degree_distributions,
                     generate)
from .metrics import wasserstein1
from .oracle import average_dspd, bfs_dspd
from .sampling import (RANDOM, SNOWBALL, SampleResult, SampleSpec,
                       draw_random_sample, draw_snowball_sample,
                       supernode_pmf_random, supernode_pmf_snowball,
                       supernode_pmfs_sbm)
from .sbm_estimator import estimate_dspd_sbm

_MASK64 = 2 ** 64 - 1
_GRAPH_TAG = 0x6772
_SAMPLE_TAG = 0x736D


@dataclass(frozen=True)
class TrialCounts:
    graphs: int = 5
    samples_per_graph: int = 20

    def __post_init__(self):
        if self.graphs < 1 or self.samples_per_graph < 1:
            raise ValueError("trial counts must be positive")

    @property
    def total(self) -> int:
        return self.graphs * self.samples_per_graph


@dataclass(frozen=True)
class EstimatorSettings:
    max_depth: int = 64
    conv_eps: float = 1e-9
    tail_eps: float = 1e-12

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.conv_eps <= 0 or self.tail_eps <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class ExperimentConfig:
    graph: GraphSpec
    sample: SampleSpec
    trials: TrialCounts = TrialCounts()
    seed: int = 0
    estimator: EstimatorSettings = EstimatorSettings()
    output_path: Optional[str] = None
    output_format: str = "json"

    def __post_init__(self):
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.sample.size >= self.graph.node_count:
            raise ValueError("sample size must be below the node count")


def derive_seed(root: int, tag: int, *indices: int) -> int:
    """Deterministically split one root seed into independent child seeds."""
    entropy = [root & _MASK64, tag & _MASK64]
    entropy.extend(int(i) & _MASK64 for i in indices)
    seq = np.random.SeedSequence(entropy)
    return int(seq.generate_state(1, np.uint64)[0])


def graph_seed(root: int, graph_index: int) -> int:
    return derive_seed(root, _GRAPH_TAG, graph_index)


def sample_seed(root: int, graph_index: int, sample_index: int) -> int:
    return derive_seed(root, _SAMPLE_TAG, graph_index, sample_index)


@lru_cache(maxsize=64)
def generate_cached(spec: GraphSpec, seed: int) -> Graph:
    """Graph generation memoized on (spec, seed).

    Seeds depend only on the root seed and graph index, so protocols that
    share a graph spec reuse the same generated graphs.
    """
    return generate(spec, seed)


def draw_sample(graph: Graph, sample: SampleSpec, seed: int) -> SampleResult:
    if sample.method == RANDOM:
        return draw_random_sample(graph, sample.size, seed)
    return draw_snowball_sample(graph, sample.size, sample.retention, seed)


def contracted_node_count(spec: GraphSpec, s: int) -> int:
    """Node count after merging the s sampled nodes into one supernode."""
    return spec.node_count - s + 1


def analytic_estimate(graph: GraphSpec, sample: SampleSpec,
                      settings: EstimatorSettings = EstimatorSettings()
                      ) -> DistanceDistribution:
    """Run the full analytical pipeline for a (graph model, sampling) pair."""
    n_contracted = contracted_node_count(graph, sample.size)
    if isinstance(graph, SbmGraph):
        p_w, p_a = degree_distributions(graph, settings.tail_eps)
        p_sw, p_sa = supernode_pmfs_sbm(sample.method, p_w, p_a, sample.size,
                                        settings.tail_eps)
        return estimate_dspd_sbm(p_w, p_a, p_sw, p_sa, n_contracted,
                                 max_depth=settings.max_depth,
                                 conv_eps=settings.conv_eps)
    p = degree_distributions(graph, settings.tail_eps)
    if sample.method == RANDOM:
        p_s = supernode_pmf_random(p, sample.size, settings.tail_eps)
    else:
        p_s = supernode_pmf_snowball(p, sample.size, settings.tail_eps)
    return estimate_dspd(p, p_s, n_contracted,
                         max_depth=settings.max_depth,
                         conv_eps=settings.conv_eps)


@dataclass(frozen=True)
class TrialRecord:
    graph_index: int
    sample_index: int
    distribution: DistanceDistribution
    w1_to_estimate: float


@dataclass(frozen=True)
class EmpiricalResult:
    config: ExperimentConfig
    estimate: DistanceDistribution
    trials: list
    average: DistanceDistribution
    w1_mean: float
    w1_std: float

    @property
    def w1_values(self) -> np.ndarray:
        return np.array([t.w1_to_estimate for t in self.trials])


def _thread_count() -> int:
    env = os.environ.get("DSPD_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"DSPD_THREADS must be an integer, got {env!r}")
    return min(os.cpu_count() or 1, 8)


def run_empirical(config: ExperimentConfig) -> EmpiricalResult:
    """The measurement protocol: graphs x samples BFS trials vs the estimate."""
    estimate = analytic_estimate(config.graph, config.sample, config.estimator)

    graphs = {}
    for g_idx in range(config.trials.graphs):
        seed = graph_seed(config.seed, g_idx)
        try:
            graphs[g_idx] = generate_cached(config.graph, seed)
        except Exception as exc:
            raise RuntimeError(
                f"graph generation failed (graph seed {seed})") from exc

    def one_trial(indices) -> TrialRecord:
        g_idx, s_idx = indices
        seed = sample_seed(config.seed, g_idx, s_idx)
        try:
            sample = draw_sample(graphs[g_idx], config.sample, seed)
            dist = bfs_dspd(graphs[g_idx], sample)
        except Exception as exc:
            raise RuntimeError(
                f"trial failed (graph seed {graph_seed(config.seed, g_idx)}, "
                f"sample seed {seed})") from exc
        return TrialRecord(g_idx, s_idx, dist, wasserstein1(dist, estimate))

    jobs = [(g, s) for g in range(config.trials.graphs)
            for s in range(config.trials.samples_per_graph)]
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            trials = list(pool.map(one_trial, jobs))
    else:
        trials = [one_trial(job) for job in jobs]

    w1 = np.array([t.w1_to_estimate for t in trials])
    average = average_dspd([t.distribution for t in trials])
    return EmpiricalResult(
        config=config, estimate=estimate, trials=trials, average=average,
        w1_mean=float(w1.mean()),
        w1_std=float(w1.std(ddof=1)) if w1.size > 1 else 0.0)


@dataclass(frozen=True)
class BenchResult:
    config: ExperimentConfig
    repetitions: int
    estimate_mean: float
    estimate_std: float
    empirical_mean: float
    empirical_std: float


def run_bench(config: ExperimentConfig, repetitions: int) -> BenchResult:
    """Time analytical estimation against single-trial BFS measurement.

    Graph generation and sample drawing happen once, outside the timed
    regions; the empirical timing covers only the per-trial BFS work.
    """
    if repetitions < 2:
        raise ValueError(f"repetitions must be >= 2, got {repetitions}")

    graph = generate_cached(config.graph, graph_seed(config.seed, 0))
    sample = draw_sample(graph, config.sample, sample_seed(config.seed, 0, 0))

    # one untimed pass so lazy imports and caches don't land in the first rep
    analytic_estimate(config.graph, config.sample, config.estimator)
    bfs_dspd(graph, sample)

    est_times = np.empty(repetitions)
    for i in range(repetitions):
        start = time.perf_counter()
        analytic_estimate(config.graph, config.sample, config.estimator)
        est_times[i] = time.perf_counter() - start

    emp_times = np.empty(repetitions)
    for i in range(repetitions):
        start = time.perf_counter()
        bfs_dspd(graph, sample)
        emp_times[i] = time.perf_counter() - start

    return BenchResult(
        config=config, repetitions=repetitions,
        estimate_mean=float(est_times.mean()),
        estimate_std=float(est_times.std(ddof=1)),
        empirical_mean=float(emp_times.mean()),
        empirical_std=float(emp_times.std(ddof=1)))
