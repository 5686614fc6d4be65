#!/usr/bin/env python3
"""Benchmark the compiled statevector kernels against the numpy fallback.

Times a full level-3 ansatz (3 x diagonal phase + mixer) plus one exact
expectation, which is the inner loop of angle optimization, grid sweeps and
the Monte-Carlo decoding experiments.

Usage: python benchmarks/bench_kernels.py [--max-k 18] [--repeats 5]
"""

import argparse
import time

import numpy as np

from qaoadec import _kernels_py

try:
    from qaoadec import _kernels_c
except ImportError:
    _kernels_c = None


def bench(impl, k, inner, repeats):
    rng = np.random.default_rng(7)
    diag = rng.integers(-k, k + 1, 1 << k).astype(np.float64)
    gammas = rng.uniform(0, 2 * np.pi, 3)
    betas = rng.uniform(0, np.pi, 3)
    template = np.full(1 << k, 2.0 ** (-k / 2), dtype=np.complex128)
    best = np.inf
    sink = 0.0
    for _ in range(repeats):
        t0 = time.perf_counter()
        for _ in range(inner):
            amps = template.copy()
            impl.run_layers(amps, diag, gammas, betas, k)
            sink += impl.expectation(amps, diag)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best, sink


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=18)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"{'k':>3} {'amplitudes':>12} {'numpy':>12} {'compiled':>12} {'speedup':>9}")
    for k in range(2, args.max_k + 1, 2):
        inner = max(1, min(2000, 1 << (18 - k)))
        t_py, _ = bench(_kernels_py, k, inner, args.repeats)
        if _kernels_c is not None:
            t_c, _ = bench(_kernels_c, k, inner, args.repeats)
            print(f"{k:>3} {1 << k:>12} {t_py * 1e6:>10.1f}us {t_c * 1e6:>10.1f}us "
                  f"{t_py / t_c:>8.1f}x")
        else:
            print(f"{k:>3} {1 << k:>12} {t_py * 1e6:>10.1f}us {'-':>12} {'-':>9}")
    if _kernels_c is None:
        print("\ncompiled kernels not built; run `pip install -e .` with a C compiler")


if __name__ == "__main__":
    main()
