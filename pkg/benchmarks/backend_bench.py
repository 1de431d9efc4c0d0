#!/usr/bin/env python3
"""Head-to-head timing of the compiled kernels vs the NumPy fallback.

The kernel rows import ``dspd._kernels`` and ``dspd._kernels_py`` directly
and time identical calls. The end-to-end rows shell out to
``python -m dspd bench`` with ``DSPD_BACKEND`` forced, because the backend
is fixed at import time and can't be swapped twice inside one process.

Usage:
    python3 benchmarks/backend_bench.py
    python3 benchmarks/backend_bench.py --repetitions 9 --json results.json
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from dspd import _kernels_py
from dspd.graphs import BinomialGraph, generate

try:
    from dspd import _kernels
except ImportError:
    _kernels = None


def random_pmf(rng, size):
    p = rng.random(size)
    return p / p.sum()


def build_cases(rng):
    """Kernel workloads shaped like the estimator's hot paths."""
    acc = random_pmf(rng, 2048)   # long accumulator folded with a short pmf,
    step = random_pmf(rng, 32)    # as in the supernode convolution chain
    a = random_pmf(rng, 512)
    b = random_pmf(rng, 512)
    coeffs = random_pmf(rng, 4096)
    ts = 0.9 + 0.0999 * rng.random(64)

    graph = generate(BinomialGraph(100_000, 1e-4), seed=7)
    sources = rng.choice(100_000, size=200, replace=False).astype(np.int32)

    return [
        ("convolve 2048x32", 300,
         lambda k: k.convolve(acc, step)),
        ("convolve 512x512", 100,
         lambda k: k.convolve(a, b)),
        ("poly_eval 4096 coeffs x64 ts", 20,
         lambda k: [k.poly_eval(coeffs, 3, t) for t in ts]),
        ("bfs 100k nodes, 200 sources", 1,
         lambda k: k.bfs_distances(graph.offsets, graph.neighbors,
                                   sources, graph.node_count)),
    ]


def best_time(call, inner, repetitions):
    """Best wall-clock time of ``inner`` amortized calls, in seconds."""
    call()  # warm up caches outside the timed region
    best = np.inf
    for _ in range(repetitions):
        start = time.perf_counter()
        for _ in range(inner):
            call()
        best = min(best, (time.perf_counter() - start) / inner)
    return best


def bench_kernels(repetitions):
    rng = np.random.default_rng(0xBE7C)
    rows = []
    for label, inner, make_call in build_cases(rng):
        timing = {"python": best_time(lambda: make_call(_kernels_py),
                                      inner, repetitions)}
        if _kernels is not None:
            timing["compiled"] = best_time(lambda: make_call(_kernels),
                                           inner, repetitions)
        rows.append((label, timing))
    return rows


def bench_end_to_end(preset, repetitions):
    """Time ``python -m dspd bench`` once per backend via subprocesses."""
    rows = []
    for backend in ("compiled", "python"):
        if backend == "compiled" and _kernels is None:
            continue
        env = dict(os.environ, DSPD_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-m", "dspd", "bench", "--preset", preset,
             "--repetitions", str(repetitions)],
            capture_output=True, text=True, env=env)
        if proc.returncode != 0:
            print(f"  {backend}: bench subcommand failed\n{proc.stderr}",
                  file=sys.stderr)
            continue
        timing = json.loads(proc.stdout)["timing"]
        assert timing["backend"] == backend
        rows.append((backend, timing))
    return rows


def fmt(seconds):
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:8.2f} ms"
    return f"{seconds:8.3f} s "


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repetitions", type=int, default=5,
                        help="timing repetitions per case (best-of)")
    parser.add_argument("--preset", default="bin 20000 rand 1000",
                        help="workload for the end-to-end comparison")
    parser.add_argument("--json", type=str, default=None,
                        help="also dump raw numbers to this file")
    parser.add_argument("--kernels-only", action="store_true",
                        help="skip the end-to-end subprocess runs")
    args = parser.parse_args(argv)

    if _kernels is None:
        print("note: compiled kernels not importable; timing fallback only\n")

    kernel_rows = bench_kernels(args.repetitions)
    width = max(len(label) for label, _ in kernel_rows)
    print(f"kernels (best of {args.repetitions})")
    print(f"  {'case':<{width}}    compiled       python     speedup")
    for label, timing in kernel_rows:
        compiled = timing.get("compiled")
        python = timing["python"]
        if compiled is None:
            print(f"  {label:<{width}}  {'-':>11}  {fmt(python)}")
        else:
            print(f"  {label:<{width}}  {fmt(compiled)}  {fmt(python)}"
                  f"  {python / compiled:7.1f}x")

    report = {"repetitions": args.repetitions,
              "kernels": {label: timing for label, timing in kernel_rows}}

    if not args.kernels_only:
        print(f"\nend-to-end, preset '{args.preset}'")
        e2e_rows = bench_end_to_end(args.preset, max(args.repetitions, 3))
        for backend, timing in e2e_rows:
            print(f"  {backend:<8}  estimate {fmt(timing['estimate']['mean'])}"
                  f"   single BFS trial {fmt(timing['empirical']['mean'])}")
        report["end_to_end"] = {"preset": args.preset,
                                "runs": dict(e2e_rows)}

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report, fh, indent=2)
        print(f"\nwrote {args.json}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
