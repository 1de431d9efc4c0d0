"""Empirical BFS distance measurement, checked against a per-node oracle."""

import time

import numpy as np
import pytest

from dspd.distance import DistanceDistribution
from dspd.graphs import BinomialGraph, PowerLawGraph, generate
from dspd.oracle import average_dspd, bfs_dspd
from dspd.sampling import SampleResult, draw_random_sample, draw_snowball_sample

from conftest import graph_from_edges


def single_node_sample(nodes):
    arr = np.asarray(nodes, dtype=np.int64)
    return SampleResult(np.sort(arr), np.sort(arr), arr)


def naive_dspd(graph, sample):
    """One BFS per non-sampled node, stopping at the first sampled hit.

    Quadratic and dictionary-based on purpose: it shares no code with the
    multi-source implementation it cross-checks.
    """
    sampled = set(sample.nodes.tolist())
    total = graph.node_count - len(sampled)
    found = []
    for v in range(graph.node_count):
        if v in sampled:
            continue
        seen = {v}
        frontier = [v]
        depth = 0
        hit = -1
        while frontier and hit < 0:
            depth += 1
            nxt = []
            for u in frontier:
                for w in graph.neighbors_of(u):
                    w = int(w)
                    if w in sampled:
                        hit = depth
                        break
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
                if hit >= 0:
                    break
            frontier = nxt
        if hit >= 0:
            found.append(hit)
    residual = 1.0 - len(found) / total
    if not found:
        return DistanceDistribution(np.array([1.0]), 1.0)
    return DistanceDistribution.from_pmf(np.bincount(found) / total, residual)


def assert_same_distribution(got, want):
    assert np.array_equal(got.survival, want.survival)
    assert got.residual == want.residual


# ----------------------------------------------------------- hand cases

def test_path_from_endpoint():
    graph = graph_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    got = bfs_dspd(graph, single_node_sample([0]))
    np.testing.assert_allclose(got.pmf(), [0.0, 1 / 3, 1 / 3, 1 / 3])
    np.testing.assert_allclose(got.survival, [1.0, 2 / 3, 1 / 3, 0.0])
    assert got.residual == 0.0


def test_multi_source_takes_nearest():
    # sampling both endpoints of the 5-path leaves everything within 2 hops
    graph = graph_from_edges(5, [(i, i + 1) for i in range(4)])
    got = bfs_dspd(graph, single_node_sample([0, 4]))
    np.testing.assert_allclose(got.pmf(), [0.0, 2 / 3, 1 / 3])


def test_unreachable_nodes_become_residual():
    graph = graph_from_edges(5, [(0, 1), (2, 3), (3, 4)])
    got = bfs_dspd(graph, single_node_sample([0]))
    assert got.pmf()[1] == pytest.approx(0.25)
    assert got.residual == pytest.approx(0.75)


def test_no_edges_all_residual():
    graph = graph_from_edges(3, [])
    got = bfs_dspd(graph, single_node_sample([0]))
    assert got.residual == 1.0
    assert got.survival.tolist() == [1.0]


def test_input_validation():
    graph = graph_from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        bfs_dspd(graph, single_node_sample([0, 1, 2]))
    with pytest.raises(ValueError):
        bfs_dspd(graph, single_node_sample([5]))
    empty = SampleResult(np.array([], dtype=np.int64),
                         np.array([], dtype=np.int64),
                         np.array([], dtype=np.int64))
    with pytest.raises(ValueError):
        bfs_dspd(graph, empty)


# ------------------------------------------------------ oracle matching

@pytest.mark.parametrize("spec,seed", [
    (BinomialGraph(150, 0.03), 0),
    (BinomialGraph(150, 0.03), 1),
    (BinomialGraph(120, 0.01), 2),   # fragmented: residual mass present
    (PowerLawGraph(180, 2.5, 1, 9), 3),
])
def test_matches_per_node_oracle(spec, seed):
    graph = generate(spec, seed)
    for sample_seed in range(3):
        sample = draw_random_sample(graph, 12, sample_seed)
        assert_same_distribution(bfs_dspd(graph, sample),
                                 naive_dspd(graph, sample))


def test_matches_per_node_oracle_snowball():
    graph = generate(BinomialGraph(200, 0.025), 7)
    sample = draw_snowball_sample(graph, 20, 0.5, 5)
    assert_same_distribution(bfs_dspd(graph, sample), naive_dspd(graph, sample))


def test_pmf_plus_residual_is_normalized():
    for seed in range(6):
        graph = generate(BinomialGraph(400, 0.008), seed)
        got = bfs_dspd(graph, draw_random_sample(graph, 25, seed))
        assert abs(got.pmf().sum() + got.residual - 1.0) <= 1e-9


# ----------------------------------------------------------- averaging

def test_average_of_point_masses():
    one = DistanceDistribution.from_pmf([0.0, 1.0])
    two = DistanceDistribution.from_pmf([0.0, 0.0, 1.0])
    got = average_dspd([one, two])
    np.testing.assert_allclose(got.pmf(), [0.0, 0.5, 0.5])
    assert got.residual == 0.0


def test_average_is_identity_on_identical_trials():
    trial = DistanceDistribution.from_pmf([0.0, 0.5, 0.25], 0.25)
    got = average_dspd([trial] * 4)
    np.testing.assert_allclose(got.pmf(), trial.pmf())
    assert got.residual == pytest.approx(trial.residual)


def test_average_mixes_residuals():
    unreachable = DistanceDistribution(np.array([1.0]), 1.0)
    reached = DistanceDistribution.from_pmf([0.0, 1.0])
    got = average_dspd([unreachable, reached])
    np.testing.assert_allclose(got.pmf(), [0.0, 0.5])
    assert got.residual == pytest.approx(0.5)


def test_average_requires_input():
    with pytest.raises(ValueError):
        average_dspd([])


# -------------------------------------------------------------- scaling

def test_runtime_scales_linearly():
    """Doubling the graph roughly doubles the search, staying under 2.5x."""
    def best_time(n, p, seed):
        graph = generate(BinomialGraph(n, p), seed)
        sample = draw_random_sample(graph, 200, seed)
        times = []
        for _ in range(5):
            start = time.perf_counter()
            bfs_dspd(graph, sample)
            times.append(time.perf_counter() - start)
        return min(times)

    small = best_time(50_000, 0.0002, 17)
    large = best_time(100_000, 0.0001, 17)
    assert large <= 2.5 * small, (small, large)
