"""Timing comparison of the residue DP kernels.

Runs the mod-2^N dynamic program over a range of table sizes on both the
numba kernel and the numpy block-convolution fallback, and prints a small
table with the speedup.  The numba path is warmed once so compilation
time does not pollute the numbers.

Usage: python benchmarks/bench_kernels.py [--limit N] [--mod-exp N ...]
"""

from __future__ import annotations

import argparse
import time

from pow2comp.kernels import build_mod_residues, numba_available


def best_of(fn, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limit", type=int, default=10_000_000, help="largest table size")
    parser.add_argument(
        "--mod-exp", type=int, nargs="+", default=[1, 4, 8], help="modulus exponents to time"
    )
    parser.add_argument("--repeats", type=int, default=3, help="best-of repeat count")
    args = parser.parse_args()

    sizes = []
    size = 100_000
    while size < args.limit:
        sizes.append(size)
        size *= 10
    sizes.append(args.limit)

    if not numba_available():
        print("numba not importable; timing the numpy fallback only")

    header = f"{'limit':>12} {'N':>3} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n_exp in args.mod_exp:
        if numba_available():
            build_mod_residues(1000, n_exp, backend="numba")  # compile outside the clock
        for limit in sizes:
            t_np = best_of(lambda: build_mod_residues(limit, n_exp, backend="numpy"), args.repeats)
            if numba_available():
                t_nb = best_of(
                    lambda: build_mod_residues(limit, n_exp, backend="numba"), args.repeats
                )
                print(
                    f"{limit:>12} {n_exp:>3} {t_np * 1e3:>8.1f}ms {t_nb * 1e3:>8.1f}ms "
                    f"{t_np / t_nb:>7.1f}x"
                )
            else:
                print(f"{limit:>12} {n_exp:>3} {t_np * 1e3:>8.1f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
