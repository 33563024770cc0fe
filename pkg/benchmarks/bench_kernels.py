"""Benchmark the hot kernels: compiled backend vs the plain array fallback.

Runs every kernel on a representative workload under both backends and
prints a table of best-of-N wall times.  The compiled backend is warmed
up first so JIT compilation never lands inside a timed run.

Run: python3 benchmarks/bench_kernels.py [--repeats N] [--seed S]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from stylodetect import trees
from stylodetect.kernels import numpy_backend

try:
    from stylodetect.kernels import numba_backend
except ImportError:
    numba_backend = None


def make_workloads(seed: int) -> dict:
    """One realistic input set per kernel, shared by both backends."""
    rng = np.random.default_rng(seed)

    ranked = np.sort(np.round(rng.standard_normal(200_000), 2))
    a = np.sort(rng.standard_normal(5_000))
    b = np.sort(rng.standard_normal(5_000))

    x_train = rng.standard_normal((4_000, 8))
    y_train = (rng.random(4_000) > 0.5).astype(np.float64)
    x_query = rng.standard_normal((400, 8))

    x = rng.standard_normal((4_000, 8))
    target = (x[:, 0] + 0.5 * x[:, 3] > 0.0).astype(np.float64)
    hess = np.ones(x.shape[0])
    rows = np.arange(x.shape[0], dtype=np.int64)
    max_depth, min_leaf = 10, 1
    cap = trees.node_capacity(x.shape[0], max_depth, min_leaf)
    feat_stream = trees.feature_subsets(cap, x.shape[1], x.shape[1])

    grown = trees.grow(x, target, hess, rows, feat_stream, 0, max_depth, min_leaf)

    return {
        "rank_sorted (200k, ties)": lambda k: k.rank_sorted(ranked),
        "pair_counts (5k x 5k)": lambda k: k.pair_counts(a, b),
        "knn_vote (4k train, 400 queries)": lambda k: k.knn_vote(
            x_train, y_train, x_query, 5
        ),
        "grow_tree (4k rows, depth 10)": lambda k: k.grow_tree(
            x,
            target,
            hess,
            rows,
            feat_stream,
            0,
            max_depth,
            min_leaf,
            np.empty(cap, dtype=np.int64),
            np.empty(cap, dtype=np.float64),
            np.empty(cap, dtype=np.int64),
            np.empty(cap, dtype=np.int64),
            np.empty(cap, dtype=np.float64),
        ),
        "tree_leaf_ids (4k rows)": lambda k: k.tree_leaf_ids(
            grown.feat, grown.thr, grown.left, grown.right, x
        ),
    }


def best_of(fn, backend, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(backend)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description="Time the array kernels.")
    parser.add_argument("--repeats", type=int, default=5, help="timed runs per kernel")
    parser.add_argument("--seed", type=int, default=0, help="workload seed")
    args = parser.parse_args()

    workloads = make_workloads(args.seed)

    if numba_backend is not None:
        # compile everything outside the timed region
        for fn in workloads.values():
            fn(numba_backend)

    header = f"{'kernel':<34} {'numpy':>10} {'numba':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, fn in workloads.items():
        base = best_of(fn, numpy_backend, args.repeats)
        if numba_backend is None:
            print(f"{name:<34} {base * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")
            continue
        jit = best_of(fn, numba_backend, args.repeats)
        print(
            f"{name:<34} {base * 1e3:>8.2f}ms {jit * 1e3:>8.2f}ms {base / jit:>7.1f}x"
        )
    if numba_backend is None:
        print("\ncompiled backend unavailable; install numba to compare")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
