#!/usr/bin/env python3
"""Benchmark the pure-Python engine against the compiled one.

Runs the three batch kernels on both engines with identical inputs, reports
wall time and speedup, and verifies that the results are identical (they
must be: the engines are bit-for-bit twins).

    python benchmarks/bench_kernels.py [--n N] [--samples S] [--runs R]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from chordgenus.kernels import compiled, pure


def _same(a, b) -> bool:
    if isinstance(a, dict):
        return set(a) == set(b) and all(_same(a[k], b[k]) for k in a)
    if isinstance(a, tuple):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return bool(np.array_equal(a, b))
    return a == b


def bench(label: str, fn, args) -> tuple[float, object]:
    t0 = time.perf_counter()
    out = fn(*args)
    dt = time.perf_counter() - t0
    print(f"  {label:<10} {dt:9.3f}s")
    return dt, out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=2000)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--runs", type=int, default=500)
    parser.add_argument("--k-max", type=int, default=50, dest="k_max")
    parser.add_argument("--sweep-n", type=int, default=5, dest="sweep_n")
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    if compiled is None:
        print("compiled engine not built; nothing to compare", file=sys.stderr)
        return 1

    jobs = [
        (
            f"sample_block(n={args.n}, samples={args.samples})",
            "sample_block",
            (args.n, args.seed, 0, args.samples),
        ),
        (
            f"plug_block(n={args.n}, k_max={args.k_max}, runs={args.runs})",
            "plug_block",
            (args.n, args.k_max, args.seed, 0, args.runs),
        ),
        (
            f"exact_sweep(n={args.sweep_n})",
            "exact_sweep",
            (args.sweep_n,),
        ),
    ]
    ok = True
    for title, name, call_args in jobs:
        print(title)
        t_pure, out_pure = bench("pure", getattr(pure, name), call_args)
        t_comp, out_comp = bench("compiled", getattr(compiled, name), call_args)
        if not _same(out_pure, out_comp):
            print("  RESULTS DIFFER — engines out of sync!")
            ok = False
        else:
            print(f"  identical results, speedup {t_pure / t_comp:8.1f}x")
        print()
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
