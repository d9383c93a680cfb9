"""Timing harness comparing the numba kernels against the numpy fallbacks."""

from __future__ import annotations

import time

import numpy as np

from . import kernels


def _rand_sparse(rng, universe: int, nnz: int):
    ids = np.sort(rng.choice(universe, size=nnz, replace=False)).astype(np.int64)
    w = rng.random(nnz) + 0.1
    return ids, w


def _time(fn, *args, repeat: int = 5, inner: int = 1) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / inner)
    return best


def run_benchmark(seed: int = 0) -> list[tuple[str, float, float]]:
    """Returns (kernel, numpy seconds, numba seconds) rows; numba is NaN when
    unavailable."""
    rng = np.random.default_rng(seed)
    rows = []

    a = _rand_sparse(rng, 2000, 40)
    b = _rand_sparse(rng, 2000, 40)
    pairs = [( _rand_sparse(rng, 2000, 40), _rand_sparse(rng, 2000, 40)) for _ in range(2000)]

    def dot_np():
        for (ia, wa), (ib, wb) in pairs:
            kernels.sparse_dot_np(ia, wa, ib, wb)

    rows.append(("sparse_dot x2000", _time(dot_np), float("nan")))
    if kernels.HAVE_NUMBA:
        kernels.sparse_dot_nb(a[0], a[1], b[0], b[1])  # warm-up compile

        def dot_nb():
            for (ia, wa), (ib, wb) in pairs:
                kernels.sparse_dot_nb(ia, wa, ib, wb)

        rows[-1] = (rows[-1][0], rows[-1][1], _time(dot_nb))

    # document match scores: 500 docs of ~10 terms
    indptr = [0]
    tids, tw = [], []
    for _ in range(500):
        ids, w = _rand_sparse(rng, 2000, 10)
        tids.append(ids)
        tw.append(w)
        indptr.append(indptr[-1] + ids.size)
    indptr = np.array(indptr, dtype=np.int64)
    tids = np.concatenate(tids)
    tw = np.concatenate(tw)
    q_ids, q_w = _rand_sparse(rng, 2000, 4)
    rows.append(
        ("match_scores 500 docs", _time(kernels.match_scores_np, indptr, tids, tw, q_ids, q_w), float("nan"))
    )
    if kernels.HAVE_NUMBA:
        kernels.match_scores_nb(indptr, tids, tw, q_ids, q_w)
        rows[-1] = (
            rows[-1][0],
            rows[-1][1],
            _time(kernels.match_scores_nb, indptr, tids, tw, q_ids, q_w),
        )

    # clustering on a random directed graph, 1000 nodes, mean out-degree 15
    n, deg = 1000, 15
    edges = set()
    while len(edges) < n * deg:
        s = int(rng.integers(n))
        t = int(rng.integers(n))
        if s != t:
            edges.add((s, t))
    counts = np.zeros(n + 1, dtype=np.int64)
    for s, _ in edges:
        counts[s + 1] += 1
    g_indptr = np.cumsum(counts)
    adj = np.empty(len(edges), dtype=np.int64)
    fill = g_indptr[:-1].copy()
    for s, t in sorted(edges):
        adj[fill[s]] = t
        fill[s] += 1
    rows.append(("clustering 1000 nodes", _time(kernels.clustering_np, g_indptr, adj), float("nan")))
    if kernels.HAVE_NUMBA:
        kernels.clustering_nb(g_indptr, adj)
        rows[-1] = (rows[-1][0], rows[-1][1], _time(kernels.clustering_nb, g_indptr, adj))

    rows.append(("apl_bfs 1000 nodes", _time(kernels.apl_bfs_np, g_indptr, adj), float("nan")))
    if kernels.HAVE_NUMBA:
        kernels.apl_bfs_nb(g_indptr, adj)
        rows[-1] = (rows[-1][0], rows[-1][1], _time(kernels.apl_bfs_nb, g_indptr, adj))
    return rows


def print_benchmark(rows) -> None:
    print(f"{'kernel':<24} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name, t_np, t_nb in rows:
        if t_nb == t_nb:  # not NaN
            print(f"{name:<24} {t_np * 1e3:>10.3f}ms {t_nb * 1e3:>10.3f}ms {t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<24} {t_np * 1e3:>10.3f}ms {'n/a':>12} {'':>9}")
