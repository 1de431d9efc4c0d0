# cython: language_level=3
"""Compiled hot kernels: pmf convolution, polynomial evaluation, BFS."""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def convolve(const double[::1] a not None, const double[::1] b not None):
    """Full linear convolution of two coefficient sequences."""
    cdef Py_ssize_t na = a.shape[0]
    cdef Py_ssize_t nb = b.shape[0]
    out_arr = np.zeros(na + nb - 1, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double ai
    with nogil:
        for i in range(na):
            ai = a[i]
            if ai == 0.0:
                continue
            for j in range(nb):
                out[i + j] += ai * b[j]
    return out_arr


def poly_eval(const double[::1] coeffs not None, long offset, double t):
    """Evaluate t**offset * sum(coeffs[i] * t**i) by Horner's rule."""
    cdef Py_ssize_t i = coeffs.shape[0] - 1
    cdef double acc = 0.0
    with nogil:
        while i >= 0:
            acc = acc * t + coeffs[i]
            i -= 1
    if offset == 0:
        return acc
    return acc * t ** offset


def bfs_distances(const long[::1] offsets not None,
                  const int[::1] neighbors not None,
                  const int[::1] sources not None, long n):
    """Multi-source BFS; returns int32 distances, -1 for unreachable."""
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef int[::1] dist = dist_arr
    cdef int[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t i, u, v, j
    cdef int d
    with nogil:
        for i in range(sources.shape[0]):
            u = sources[i]
            if dist[u] < 0:
                dist[u] = 0
                queue[tail] = <int> u
                tail += 1
        while head < tail:
            u = queue[head]
            head += 1
            d = dist[u] + 1
            for j in range(offsets[u], offsets[u + 1]):
                v = neighbors[j]
                if dist[v] < 0:
                    dist[v] = d
                    queue[tail] = <int> v
                    tail += 1
    return dist_arr
