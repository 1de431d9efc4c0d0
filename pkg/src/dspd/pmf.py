"""Finite discrete probability mass functions over non-negative integer degrees.

A :class:`Pmf` stores a tight support window ``[min_degree, min_degree + len(probs) - 1]``
and the probabilities on it. All operations return new normalized values;
nothing mutates in place, so values are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from ._backend import convolve

DEFAULT_TAIL_EPS = 1e-12

_SUM_TOL = 1e-9


class DegenerateDistributionError(ValueError):
    """Raised when an operation requires positive mean (or non-empty support)."""


@dataclass(frozen=True)
class Pmf:
    """Probability mass function with tight integer support.

    ``probs[i]`` is ``P(K = min_degree + i)``. Entries are non-negative,
    sum to 1 within 1e-9, and the first and last entries are positive.
    """

    min_degree: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.ascontiguousarray(self.probs, dtype=np.float64)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "min_degree", int(self.min_degree))
        if self.min_degree < 0:
            raise ValueError(f"negative support start: {self.min_degree}")
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d sequence")
        if np.any(probs < 0):
            raise ValueError("negative probability entry")
        if probs[0] <= 0 or probs[-1] <= 0:
            raise ValueError("support is not tight (zero mass at an endpoint)")
        total = float(probs.sum())
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")

    @property
    def max_degree(self) -> int:
        return self.min_degree + self.probs.shape[0] - 1

    @property
    def support(self) -> np.ndarray:
        return np.arange(self.min_degree, self.max_degree + 1)

    def as_dict(self) -> dict[int, float]:
        return {int(k): float(v) for k, v in zip(self.support, self.probs) if v > 0}

    def prob(self, k: int) -> float:
        if self.min_degree <= k <= self.max_degree:
            return float(self.probs[k - self.min_degree])
        return 0.0


def point_mass(k: int) -> Pmf:
    """Degenerate pmf concentrated at degree ``k``."""
    return Pmf(k, np.ones(1))


def _tighten(min_degree: int, probs: np.ndarray) -> tuple[int, np.ndarray]:
    nz = np.flatnonzero(probs)
    if nz.size == 0:
        raise DegenerateDistributionError("all mass vanished")
    return min_degree + int(nz[0]), probs[nz[0] : nz[-1] + 1]


def _build(min_degree: int, probs: np.ndarray) -> Pmf:
    """Normalize, drop zero-mass endpoints, and wrap as a Pmf."""
    min_degree, probs = _tighten(min_degree, np.asarray(probs, dtype=np.float64))
    return Pmf(min_degree, probs / probs.sum())


def _trim_tails(min_degree: int, probs: np.ndarray, tail_eps: float) -> tuple[int, np.ndarray]:
    """Drop mass below ``tail_eps`` symmetrically from both support ends.

    At most ``tail_eps / 2`` is removed from each side, so the total removed
    mass stays below ``tail_eps``.
    """
    budget = tail_eps / 2.0
    lo_cum = np.cumsum(probs)
    lo = int(np.searchsorted(lo_cum, budget, side="left"))
    hi_cum = np.cumsum(probs[::-1])
    hi_drop = int(np.searchsorted(hi_cum, budget, side="left"))
    hi = probs.shape[0] - hi_drop
    if lo >= hi:  # pathological; keep the single largest entry
        peak = int(np.argmax(probs))
        lo, hi = peak, peak + 1
    return min_degree + lo, probs[lo:hi]


def binomial_pmf(n: int, p: float, tail_eps: float = DEFAULT_TAIL_EPS) -> Pmf:
    """Binomial(n, p) pmf with tails below ``tail_eps`` truncated, renormalized.

    Only a quantile window of the support is evaluated, so construction cost
    depends on the spread of the distribution rather than on ``n``.
    """
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be a probability, got {p}")
    if not 0.0 < tail_eps <= 1e-6:
        raise ValueError(f"tail_eps must be in (0, 1e-6], got {tail_eps}")
    if p == 0.0:
        return point_mass(0)
    if p == 1.0:
        return point_mass(n)
    # window holding all but < tail_eps/4 of the mass on each side
    lo = int(stats.binom.ppf(tail_eps / 8.0, n, p))
    hi = int(stats.binom.isf(tail_eps / 8.0, n, p))
    lo, hi = max(0, lo - 1), min(n, hi + 1)
    k = np.arange(lo, hi + 1)
    probs = stats.binom.pmf(k, n, p)
    lo, probs = _trim_tails(lo, probs, tail_eps / 2.0)
    return _build(lo, probs)


def power_law_pmf(gamma: float, k_min: int, k_max: int) -> Pmf:
    """Normalized k**(-gamma) on the integer support [k_min, k_max]."""
    if k_min < 1:
        raise ValueError(f"k_min must be >= 1, got {k_min}")
    if k_min > k_max:
        raise ValueError(f"empty support: k_min={k_min} > k_max={k_max}")
    if gamma < 0:
        raise ValueError(f"gamma must be non-negative, got {gamma}")
    k = np.arange(k_min, k_max + 1, dtype=np.float64)
    return _build(k_min, k ** (-gamma))


def degree_weighted(p: Pmf) -> Pmf:
    """Size-biased distribution k*p(k)/c, the degree law seen across an edge."""
    weighted = p.support * p.probs
    if weighted.sum() <= 0.0:
        raise DegenerateDistributionError("degree weighting needs positive mean")
    return _build(p.min_degree, weighted)


def convolution_power(p: Pmf, s: int, tail_eps: float = DEFAULT_TAIL_EPS) -> Pmf:
    """Distribution of the sum of ``s`` independent draws from ``p``.

    Folds the base coefficients in one at a time, trimming sub-``tail_eps``
    tails after every product; a single renormalization at the end restores
    the trimmed mass. The trimming keeps supports compact (a few thousand
    entries even for ``s`` around 1000) while the step count ties the cost
    to the sample size rather than to the underlying graph.
    """
    if s < 1:
        raise ValueError(f"s must be a positive integer, got {s}")
    min_degree, probs = p.min_degree, p.probs
    for _ in range(int(s) - 1):
        probs = convolve(probs, p.probs)
        min_degree, probs = _trim_tails(min_degree + p.min_degree, probs, tail_eps)
    return _build(min_degree, probs)


def shift(p: Pmf, delta: int) -> Pmf:
    """Relabel the support by ``delta``; probabilities are unchanged."""
    new_min = p.min_degree + delta
    if new_min < 0:
        raise ValueError(
            f"shift by {delta} puts mass at negative degree {new_min}"
        )
    return Pmf(new_min, p.probs)


def mixture(p1: Pmf, p2: Pmf, w: float) -> Pmf:
    """Weighted mixture w*p1 + (1-w)*p2 on the union support."""
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"mixture weight must be a probability, got {w}")
    lo = min(p1.min_degree, p2.min_degree)
    hi = max(p1.max_degree, p2.max_degree)
    acc = np.zeros(hi - lo + 1)
    acc[p1.min_degree - lo : p1.max_degree - lo + 1] += w * p1.probs
    acc[p2.min_degree - lo : p2.max_degree - lo + 1] += (1.0 - w) * p2.probs
    return _build(lo, acc)


def mean(p: Pmf) -> float:
    """Expected value of the pmf."""
    return float(np.dot(p.support, p.probs))
