#!/usr/bin/env python3
"""Benchmark the JIT kernels against their pure-numpy fallbacks.

Times the two hot paths (field table construction and the partition scan)
on both backends and prints a small table.  Use --quick to shrink the scan
workload; results double as a parity check.

    python3 benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from scheme_forge import _kernels
from scheme_forge.finite_field import build_field
from scheme_forge.search import trace_partition


def _time(fn, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_antilog(p, f):
    q = p ** f
    field = build_field(p, f)  # also provides the modulus
    mlow = np.asarray(field.modulus[:-1], dtype=np.int64)

    def jit():
        out = np.empty(q - 1, dtype=np.int32)
        return _kernels._antilog_jit(p, f, q, mlow, out)

    def fallback():
        return _kernels.antilog_table_numpy(p, f, q, list(mlow))

    t_jit, a = _time(jit)
    t_np, b = _time(fallback)
    assert np.array_equal(a, b), "backend mismatch in antilog tables"
    return t_jit, t_np


def bench_search(p, dmax, limit_prefixes):
    N = 2 * (p + 1)
    t0, ts, tn = trace_partition(p)
    sden = np.zeros(N, dtype=np.int64)
    for i in ts:
        sden[i] = 1
    for i in tn:
        sden[i] = -1
    depth = 4 if N <= 8 else 7
    prefixes = _kernels.search_prefixes(N, dmax, depth)[:limit_prefixes]

    def run(force_numpy):
        counts = np.zeros(dmax + 2, dtype=np.int64)
        surv = []
        for pre in prefixes:
            if force_numpy:
                got = _kernels._search_chunk_numpy(
                    pre, N, 3, dmax, N // 2,
                    ((t0[0] - np.arange(N)) % N).astype(np.int64),
                    ((t0[1] - np.arange(N)) % N).astype(np.int64),
                    sden, p, True, counts)
            else:
                got = _kernels.search_chunk(pre, N, 3, dmax, N // 2,
                                            (t0[0], t0[1]), sden, p, True, counts)
            if len(got):
                surv.append(got)
        total = int(counts.sum())
        nsurv = sum(len(s) for s in surv)
        return total, nsurv

    if _kernels.use_numba():
        run(False)  # warm the JIT outside the timed region
    t_jit, r_jit = _time(lambda: run(False), repeat=1)
    t_np, r_np = _time(lambda: run(True), repeat=1)
    assert r_jit == r_np, "backend mismatch in search results"
    return t_jit, t_np


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()

    if not _kernels.HAS_NUMBA:
        print("numba unavailable: only the numpy fallback can run")
        return

    rows = []
    for (p, f) in [(3, 10), (11, 5), (5, 7)]:
        t_jit, t_np = bench_antilog(p, f)
        rows.append((f"antilog F_{p}^{f} (q={p ** f})", t_jit, t_np))

    scan_prefixes = 8 if args.quick else 40
    t_jit, t_np = bench_search(3, 4, 10_000)
    rows.append(("scan p=3 (full, 2796 leaves)", t_jit, t_np))
    t_jit, t_np = bench_search(7, 4, scan_prefixes)
    rows.append((f"scan p=7 ({scan_prefixes} prefixes)", t_jit, t_np))

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_jit, t_np in rows:
        print(f"{name:<{width}}  {t_jit * 1e3:>8.2f}ms  {t_np * 1e3:>8.2f}ms  "
              f"{t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    main()
