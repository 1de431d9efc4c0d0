"""Shared fixtures and strategies for the test suite."""

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dspd.graphs import _csr_from_edges
from dspd.pmf import Pmf

settings.register_profile(
    "suite",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@st.composite
def pmfs(draw, min_degree_max=6, width_max=8, min_degree_min=0):
    """Random tight-support pmf on a small integer window."""
    min_degree = draw(st.integers(min_degree_min, min_degree_max))
    width = draw(st.integers(1, width_max))
    raw = draw(
        st.lists(st.floats(0.01, 1.0), min_size=width, max_size=width)
    )
    probs = np.asarray(raw, dtype=np.float64)
    return Pmf(min_degree, probs / probs.sum())


def random_pmf(rng, min_degree_max=6, width_max=8, min_degree_min=0):
    """RNG-driven counterpart of the ``pmfs`` strategy, for bulk loops."""
    min_degree = int(rng.integers(min_degree_min, min_degree_max + 1))
    width = int(rng.integers(1, width_max + 1))
    probs = rng.uniform(0.01, 1.0, size=width)
    return Pmf(min_degree, probs / probs.sum())


def graph_from_edges(n, edges):
    """Build a Graph from an undirected edge list (tests only)."""
    arr = np.asarray(sorted(set(tuple(sorted(e)) for e in edges)), dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    return _csr_from_edges(n, arr)


@pytest.fixture
def rng():
    return np.random.default_rng(0xD15D)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the acceptance-criteria verdict lines after the test summary."""
    try:
        from test_acceptance import acceptance_lines
    except ImportError:
        return
    lines = acceptance_lines()
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
