#!/usr/bin/env python3
"""Benchmark the two hot kernels on both backends (numba @njit vs numpy).

Counts must agree exactly between backends; times are wall-clock.  Run:

    python benchmarks/bench_kernels.py            # full sizes
    python benchmarks/bench_kernels.py --quick    # smaller sweep
"""

import argparse
import time

import numpy as np

from nonarch_lab import _kernels
from nonarch_lab.arith_core import Ball
from nonarch_lab.ffcount import VarietySpec

ELLIPTIC = VarietySpec(2, [{(0, 2): (1,), (3, 0): (-1,), (1, 0): (1,)}],
                       m=1, d=3, irreducible=True, name="y^2=x^3-x")


def pack(X, q, r):
    terms = [[(list(c), e) for e, c in poly.items()] for poly in X.polynomials]
    return _kernels.pack_equations(terms, q, r, X.n)


def bench_ff(q, r):
    packed = pack(ELLIPTIC, q, r)
    total = q ** (r * ELLIPTIC.n)
    rows = []
    if _kernels.HAVE_NUMBA:
        _kernels._ff_count_core(q, r, 2, *packed[:4], packed[4], 0, 1)
        t0 = time.perf_counter()
        count = _kernels._ff_count_core(q, r, 2, *packed[:4], packed[4], 0, total)
        rows.append(("numba", count, time.perf_counter() - t0))
    t0 = time.perf_counter()
    count = 0
    chunk = 1 << 15
    for s in range(0, total, chunk):
        idx = np.arange(s, min(s + chunk, total), dtype=np.int64)
        count += int(_kernels._ff_count_numpy_chunk(q, r, 2, packed, idx).sum())
    rows.append(("numpy", count, time.perf_counter() - t0))
    return total, rows


def bench_tr(p, K, degree):
    ball = Ball(p, (1,), 1)
    xs = np.array([x[0] for x in ball.residues(K)], dtype=np.int64)
    mod = p ** K
    rng = np.random.default_rng(7)
    table = rng.integers(0, mod, size=(len(xs), degree + 1), dtype=np.int64)
    rows = []
    if _kernels.HAVE_NUMBA:
        _kernels._tr_pair_sweep_fast(table[:4], xs[:4], p, mod, K, 0, 2)
        t0 = time.perf_counter()
        res = _kernels._tr_pair_sweep_fast(table, xs, p, mod, K, 0, 2)
        rows.append(("numba", res, time.perf_counter() - t0))
    t0 = time.perf_counter()
    res = _kernels._tr_pair_sweep_numpy(table, xs, p, mod, K, 0, 2)
    rows.append(("numpy", res, time.perf_counter() - t0))
    return len(xs), rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    print(f"active backend: {_kernels.backend()}")
    print()
    print("F_q[t] point-count kernel (y^2 = x^3 - x):")
    cases = [(7, 2), (11, 3)] if args.quick else [(7, 3), (11, 3), (13, 3)]
    for q, r in cases:
        total, rows = bench_ff(q, r)
        for name, count, dt in rows:
            rate = total / dt / 1e6
            print(f"  q={q} r={r} ({total:>9} states): {name:5s} "
                  f"count={count:<6} {dt:8.3f}s  {rate:7.2f} Mstate/s")
        if len(rows) == 2:
            counts = {rows[0][1], rows[1][1]}
            assert len(counts) == 1, "backends disagree"
            print(f"    numba speedup: {rows[1][2] / rows[0][2]:.2f}x")
    print()
    print("T_r residue pair-sweep kernel (random tables):")
    cases = [(3, 6, 20)] if args.quick else [(3, 7, 30), (3, 8, 54)]
    for p, K, degree in cases:
        n, rows = bench_tr(p, K, degree)
        for name, res, dt in rows:
            pairs = n * n
            print(f"  p={p} K={K} deg={degree} ({pairs:>9} pairs): {name:5s} "
                  f"first_bad={tuple(int(v) for v in res)} {dt:8.3f}s  "
                  f"{pairs / dt / 1e6:7.2f} Mpair/s")


if __name__ == "__main__":
    main()
