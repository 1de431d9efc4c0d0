"""NumPy fallback implementations of the hot kernels.

Same contracts as the compiled module ``dspd._kernels``: dense pmf
convolution, polynomial evaluation of probability series, and multi-source
BFS over a CSR adjacency.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full linear convolution of two coefficient sequences."""
    return np.convolve(a, b)


def poly_eval(coeffs: np.ndarray, offset: int, t: float) -> float:
    """Evaluate t**offset * sum(coeffs[i] * t**i).

    ``t`` is expected in [0, 1]; underflow of t**offset for large offsets
    is benign (the true value is indistinguishable from zero).
    """
    if t == 0.0:
        inner = coeffs[0] if offset == 0 else 0.0
        return float(inner)
    powers = np.power(t, np.arange(coeffs.shape[0]))
    return float(t**offset * np.dot(coeffs, powers))


def bfs_distances(
    offsets: np.ndarray, neighbors: np.ndarray, sources: np.ndarray, n: int
) -> np.ndarray:
    """Multi-source BFS; returns int32 distances, -1 for unreachable.

    Level-synchronous frontier expansion: each round gathers the adjacency
    of the whole frontier with vectorized index arithmetic.
    """
    dist = np.full(n, -1, dtype=np.int32)
    frontier = np.asarray(sources, dtype=np.int64)
    dist[frontier] = 0
    level = 0
    while frontier.size:
        counts = offsets[frontier + 1] - offsets[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        starts = offsets[frontier]
        # flat gather indices: for each frontier node an arange over its row
        shifts = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        nbrs = neighbors[np.arange(total, dtype=np.int64) + shifts]
        fresh = nbrs[dist[nbrs] < 0]
        if fresh.size == 0:
            break
        fresh = np.unique(fresh)
        level += 1
        dist[fresh] = level
        frontier = fresh
    return dist
