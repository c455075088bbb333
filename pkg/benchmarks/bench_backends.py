#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_backends.py [--rows 15] [--cols 15]
       [--permutations 199] [--timesteps 2]
"""

import argparse
import time

import numpy as np

from lisakit._kernels import get_backend
from lisakit.data_model import zscore_timestep
from lisakit.permutation import global_perm_matrix, local_perm_matrix
from lisakit.rng import RngPolicy
from lisakit.stats import StatKind
from lisakit.weights import NeighborGraph, row_normalize

LOCAL_WANT = {
    StatKind.LOCAL_MORAN: True,
    StatKind.LOCAL_GEARY: True,
    StatKind.GI_STAR: True,
}
GLOBAL_WANT = {
    StatKind.GLOBAL_MORAN: True,
    StatKind.GLOBAL_GEARY: True,
    StatKind.GENERAL_G: True,
}


def grid_weights(rows, cols, include_self=False):
    n = rows * cols
    adj = [[] for _ in range(n)]
    for i in range(rows):
        for j in range(cols):
            for di, dj in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)):
                ii, jj = i + di, j + dj
                if 0 <= ii < rows and 0 <= jj < cols:
                    adj[i * cols + j].append(ii * cols + jj)
    graph = NeighborGraph(n=n, adjacency=tuple(tuple(sorted(a)) for a in adj))
    return row_normalize(graph, include_self)


def bench(backend, W, Ws, zs, M):
    n = W.n
    # warm up (jit compile) outside the timed region
    local_perm_matrix(W, Ws, zs[0], n, 19, RngPolicy(0), LOCAL_WANT, backend=backend)
    global_perm_matrix(W, zs[0], n, 19, RngPolicy(0), GLOBAL_WANT, backend=backend)

    t0 = time.perf_counter()
    for t, z in enumerate(zs):
        local_perm_matrix(W, Ws, z, n, M, RngPolicy(42, t), LOCAL_WANT, backend=backend)
    local_s = time.perf_counter() - t0

    t0 = time.perf_counter()
    for t, z in enumerate(zs):
        global_perm_matrix(W, z, n, M, RngPolicy(42, t), GLOBAL_WANT, backend=backend)
    global_s = time.perf_counter() - t0
    return local_s, global_s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=15)
    ap.add_argument("--cols", type=int, default=15)
    ap.add_argument("--permutations", type=int, default=199)
    ap.add_argument("--timesteps", type=int, default=2)
    args = ap.parse_args()

    rsn = np.random.RandomState(0)
    W = grid_weights(args.rows, args.cols)
    Ws = grid_weights(args.rows, args.cols, include_self=True)
    zs = [zscore_timestep(rsn.normal(size=W.n)) for _ in range(args.timesteps)]

    n = W.n
    print(f"{n} locations, M={args.permutations}, {args.timesteps} timestep(s), "
          "3 local + 3 global statistics\n")
    print(f"{'backend':<8} {'local kernels':>14} {'global kernels':>15}")
    rows = {}
    for backend in ("numba", "numpy"):
        try:
            local_s, global_s = bench(backend, W, Ws, zs, args.permutations)
        except ImportError:
            print(f"{backend:<8} {'unavailable':>14}")
            continue
        rows[backend] = (local_s, global_s)
        print(f"{backend:<8} {local_s:>13.2f}s {global_s:>14.2f}s")
    if len(rows) == 2:
        print(f"\nspeedup (numpy/numba): local {rows['numpy'][0] / rows['numba'][0]:.1f}x, "
              f"global {rows['numpy'][1] / rows['numba'][1]:.1f}x")


if __name__ == "__main__":
    main()
