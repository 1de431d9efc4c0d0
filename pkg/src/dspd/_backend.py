"""Kernel backend selection.

The compiled Cython kernels are preferred when importable; otherwise the
NumPy fallback is used. ``DSPD_BACKEND=python|compiled`` forces a choice
(mainly for benchmarking and parity tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("DSPD_BACKEND", "").strip().lower()

if _forced == "python":
    _impl = _kernels_py
elif _forced == "compiled":
    from . import _kernels as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
convolve = _impl.convolve
poly_eval = _impl.poly_eval
bfs_distances = _impl.bfs_distances
