#!/usr/bin/env python3
"""Benchmark the compiled Laguerre kernels against the pure-Python fallback.

Three workloads:

* grid:   L_N over a dense argument array (number-state concurrence sweeps),
* scalar: repeated single-point evaluation (root-isolation bisections),
* roots:  full root isolation of L_N below a cutoff.

Run as ``python benchmarks/bench_laguerre.py``.  The fallback is always
importable; the compiled column reports "missing" if the extension was not
built (DEGJC_NO_EXT=1 at install time).
"""

import time

import numpy as np

from degjc import _laguerre_py

try:
    from degjc import _laguerre_cy
except ImportError:
    _laguerre_cy = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_grid(mod, n, xs):
    return best_of(lambda: mod.laguerre_array(n, xs))


def bench_scalar(mod, n, points):
    def run():
        for x in points:
            mod.laguerre_scalar(n, x)

    return best_of(run, repeats=3)


def bench_roots(n, xmax):
    # exercised through the package-level selection; measures the active backend
    from degjc.specialfn import laguerre_roots

    return best_of(lambda: laguerre_roots(n, xmax), repeats=3)


def row(name, t_py, t_cy):
    if t_cy is None:
        print(f"{name:<38} {t_py * 1e3:>10.2f} ms {'missing':>12}")
    else:
        print(f"{name:<38} {t_py * 1e3:>10.2f} ms {t_cy * 1e3:>9.2f} ms {t_py / t_cy:>7.1f}x")


def main():
    from degjc.specialfn import KERNEL_BACKEND

    print(f"active package backend: {KERNEL_BACKEND}")
    print(f"{'workload':<38} {'python':>13} {'cython':>12} {'speedup':>7}")

    # x stays in the physically reached window 4 b^2 |gamma|^2 <= 16 b^2
    for n, size in ((25, 100_000), (400, 20_000), (2000, 5_000)):
        xs = np.ascontiguousarray(np.linspace(0.0, 64.0, size))
        t_py = bench_grid(_laguerre_py, n, xs)
        t_cy = bench_grid(_laguerre_cy, n, xs) if _laguerre_cy else None
        row(f"grid    N={n:<5} points={size}", t_py, t_cy)

    for n, m in ((25, 20_000), (400, 2_000)):
        pts = np.linspace(0.0, 64.0, m)
        t_py = bench_scalar(_laguerre_py, n, pts)
        t_cy = bench_scalar(_laguerre_cy, n, pts) if _laguerre_cy else None
        row(f"scalar  N={n:<5} calls={m}", t_py, t_cy)

    t = bench_roots(25, 102.0)
    print(f"{'roots   N=25 (active backend)':<38} {t * 1e3:>10.2f} ms")


if __name__ == "__main__":
    main()
