#!/usr/bin/env python3
"""Benchmark the compiled stack kernel against the pure-numpy fallback.

Two regimes matter: large batched k grids (sweeps), where numpy's
vectorization already amortizes interpreter overhead, and single-k calls
(the feature-refinement loops of the scan module and the two-parameter
singularity searches), where the compiled kernel avoids per-call array
machinery entirely.

Usage: python benchmarks/bench_stack.py [n_layers] [n_k] [repeats]
"""
import sys
import time

import numpy as np

from ptscatter import kernels


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def report(label, t, per):
    print(f"  {label:10s}: {t * 1e3:9.2f} ms  ({per / t:,.0f} matrices/s)")


def main():
    n_layers = int(sys.argv[1]) if len(sys.argv) > 1 else 64
    n_k = int(sys.argv[2]) if len(sys.argv) > 2 else 20000
    repeats = int(sys.argv[3]) if len(sys.argv) > 3 else 5

    rng = np.random.default_rng(7)
    values = rng.normal(size=n_layers) + 1j * rng.normal(size=n_layers)
    widths = rng.uniform(0.05, 0.4, size=n_layers)
    ks = np.linspace(0.3, 5.0, n_k)
    k1 = ks[: 1]
    n_scalar = 5000

    impls = [("pure-numpy", kernels.stack_transfer_py)]
    if kernels.USING_COMPILED:
        from ptscatter.kernels import _stack

        impls.insert(0, ("compiled", _stack.stack_transfer))
        m_c = _stack.stack_transfer(values, widths, -1.0, ks)
        m_p = kernels.stack_transfer_py(values, widths, -1.0, ks)
        print(f"kernel agreement: max entry diff = {np.max(np.abs(m_c - m_p)):.3e}")
    else:
        print("compiled kernel not available; timing the fallback only")

    print(f"\nbatched grid: layers={n_layers} n_k={n_k} (best of {repeats})")
    times = {}
    for name, fn in impls:
        times[name] = timeit(lambda fn=fn: fn(values, widths, -1.0, ks), repeats)
        report(name, times[name], n_k)

    print(f"\nsingle-k calls (refinement loops): layers={n_layers}, {n_scalar} calls")
    for name, fn in impls:
        def loop(fn=fn):
            for _ in range(n_scalar):
                fn(values, widths, -1.0, k1)
        times[name] = timeit(loop, repeats)
        report(name, times[name], n_scalar)

    if kernels.USING_COMPILED:
        print(f"\nsingle-k speedup: {times['pure-numpy'] / times['compiled']:.1f}x")


if __name__ == "__main__":
    main()
