#!/usr/bin/env python3
"""Benchmark the hot kernels: numba JIT against the pure-Python fallback.

The same comparison can be reproduced end to end by running any workload
with RAAGQI_NO_NUMBA=1 in the environment.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

import numpy as np

import raagqi._kernels as K
import raagqi.graphs as G


def bench(label, fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    print("  %-38s %8.1f ms" % (label, best * 1e3))
    return best


def setup_pentagon():
    g = G.pentagon()
    order = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    comm = [0] * 5
    for v in order:
        for u in g.neighbors(v):
            comm[idx[v]] |= 1 << idx[u]
    return comm


def bench_normal_form(quick):
    comm = setup_pentagon()
    rng = random.Random(0)
    n_words = 2000 if quick else 20000
    word_set = [
        [K.letter(rng.randrange(5), rng.choice((1, -1))) for _ in range(rng.randint(4, 14))]
        for _ in range(n_words)
    ]
    masks_jit = np.asarray(comm, dtype=np.int64)
    masks_py = np.empty(5, dtype=object)
    masks_py[:] = comm

    def run_jit():
        for w in word_set:
            buf = np.asarray(w, dtype=np.int64)
            K._nf_jit(buf, len(w), masks_jit)

    def run_py():
        for w in word_set:
            buf = np.empty(len(w), dtype=object)
            buf[:] = w
            K._nf_py(buf, len(w), masks_py)

    print("normal form, %d random words:" % n_words)
    t_py = bench("pure python", run_py)
    if K.HAVE_JIT:
        run_jit()  # warm the compiler
        t_jit = bench("numba @njit", run_jit)
        print("  speedup: %.1fx" % (t_py / t_jit))


def bench_cycles(quick):
    g = G.dodecahedron_double()
    order = g.sorted_vertices()
    idx = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for v in order:
        for u in g.neighbors(v):
            adj[idx[v]] |= 1 << idx[u]
    cap = 9 if quick else 12

    def run_jit():
        K.enumerate_cycle_lists(adj, cap, tight_only=False)

    def run_py():
        K.enumerate_cycle_lists(adj + [0] * 70, cap, tight_only=False)

    print("embedded cycles <= %d on the doubled dodecahedron (35 vertices):" % cap)
    t_py = bench("pure python", run_py, repeat=1)
    if K.HAVE_JIT:
        run_jit()
        t_jit = bench("numba @njit", run_jit, repeat=1)
        print("  speedup: %.1fx" % (t_py / t_jit))

    def run_tight_jit():
        K.enumerate_cycle_lists(adj, len(order), tight_only=True)

    def run_tight_py():
        K.enumerate_cycle_lists(adj + [0] * 70, len(order), tight_only=True)

    print("tight cycles, full scan (length <= 35):")
    t_py = bench("pure python", run_tight_py, repeat=1)
    if K.HAVE_JIT:
        run_tight_jit()
        t_jit = bench("numba @njit", run_tight_jit, repeat=1)
        print("  speedup: %.1fx" % (t_py / t_jit))


def bench_union_find(quick):
    rng = random.Random(1)
    n = 200_000 if quick else 2_000_000
    pairs = np.asarray(
        [(rng.randrange(n), rng.randrange(n)) for _ in range(n)], dtype=np.int64
    )

    def run():
        K.union_find(n, pairs)

    print("union-find over %d pairs:" % n)
    if K.HAVE_JIT:
        run()
        bench("numba @njit", run, repeat=1)
    # the pure path is invoked through the same entry point without numba
    parent = np.arange(n, dtype=np.int64)
    bench("pure python", lambda: K._uf_py(parent.copy(), pairs), repeat=1)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print("numba available: %s" % K.HAVE_JIT)
    bench_normal_form(args.quick)
    bench_cycles(args.quick)
    bench_union_find(args.quick)


if __name__ == "__main__":
    main()
