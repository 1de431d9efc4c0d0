"""Comparison metrics between distance distributions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distance import DistanceDistribution


def _padded_finite_pmfs(a: DistanceDistribution, b: DistanceDistribution):
    pa = a.finite_pmf()
    pb = b.finite_pmf()
    size = max(pa.shape[0], pb.shape[0])
    pa = np.pad(pa, (0, size - pa.shape[0]))
    pb = np.pad(pb, (0, size - pb.shape[0]))
    return pa, pb


def wasserstein1(a: DistanceDistribution, b: DistanceDistribution) -> float:
    """Earth-mover distance between the reachability-conditioned pmfs.

    On integer support this is the sum of absolute CDF differences.
    """
    pa, pb = _padded_finite_pmfs(a, b)
    return float(np.abs(np.cumsum(pa) - np.cumsum(pb)).sum())


def mean_distance(dist: DistanceDistribution) -> float:
    """Expected distance conditioned on the target being reachable."""
    probs = dist.finite_pmf()
    return float(np.arange(probs.shape[0]) @ probs)


@dataclass(frozen=True)
class MethodComparison:
    smaller_method: str
    mean_random: float
    mean_snowball: float
    difference: float  # mean_random - mean_snowball


def compare_methods(random_dist: DistanceDistribution,
                    snowball_dist: DistanceDistribution) -> MethodComparison:
    """Decide which sampling method yields the smaller mean distance."""
    mean_random = mean_distance(random_dist)
    mean_snowball = mean_distance(snowball_dist)
    difference = mean_random - mean_snowball
    if difference > 0:
        smaller = "snowball"
    elif difference < 0:
        smaller = "random"
    else:
        smaller = "tie"
    return MethodComparison(smaller, mean_random, mean_snowball, difference)
