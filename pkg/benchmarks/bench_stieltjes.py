"""Benchmark the tridiagonalization kernel: compiled extension vs pure NumPy.

Run as `python benchmarks/bench_stieltjes.py [--sizes 50,100,200,400]
[--repeats 5]`. Both backends run the same algorithm (weighted recurrence
with two reorthogonalization passes); the table reports best-of-N wall times
and the speedup of the compiled kernel.
"""
import argparse
import time

import numpy as np

from krylovflow import kernels


def _measure(d, rng):
    energies = np.sort(rng.uniform(-1.0, 1.0, size=d))
    log_w = rng.uniform(-12.0, 0.0, size=d)
    w = np.exp(log_w - log_w.max())
    return energies, w / w.sum()


def _time(fn, energies, weights, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(energies, weights, 1e-12)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    have_ext = kernels.BACKEND == "cython"
    print(f"selected backend: {kernels.BACKEND}")
    if not have_ext:
        print("compiled extension unavailable; timing the NumPy fallback only")
    header = f"{'d':>6}  {'numpy [ms]':>12}"
    if have_ext:
        header += f"  {'cython [ms]':>12}  {'speedup':>8}"
    print(header)
    rng = np.random.default_rng(7)
    for d in sizes:
        energies, weights = _measure(d, rng)
        t_py = _time(kernels.stieltjes_python, energies, weights, args.repeats)
        line = f"{d:>6}  {1e3 * t_py:>12.3f}"
        if have_ext:
            t_cy = _time(kernels.stieltjes, energies, weights, args.repeats)
            line += f"  {1e3 * t_cy:>12.3f}  {t_py / t_cy:>8.2f}x"
        print(line)


if __name__ == "__main__":
    main()
