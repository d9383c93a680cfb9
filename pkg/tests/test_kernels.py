"""Numba and numpy kernel variants must agree on random inputs."""

import numpy as np
import pytest

from prosa import kernels


def rand_sparse(rng, universe=200, max_nnz=20):
    nnz = int(rng.integers(0, max_nnz + 1))
    ids = np.sort(rng.choice(universe, size=nnz, replace=False)).astype(np.int64)
    return ids, rng.random(nnz) + 0.01


needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")


@needs_numba
def test_sparse_dot_backends_agree():
    rng = np.random.default_rng(0)
    for _ in range(200):
        ia, wa = rand_sparse(rng)
        ib, wb = rand_sparse(rng)
        assert kernels.sparse_dot_nb(ia, wa, ib, wb) == pytest.approx(
            kernels.sparse_dot_np(ia, wa, ib, wb), rel=1e-12, abs=1e-12
        )


@needs_numba
def test_merge_add_backends_agree():
    rng = np.random.default_rng(1)
    for _ in range(100):
        ia, wa = rand_sparse(rng)
        ib, wb = rand_sparse(rng)
        ids_a, w_a = kernels.merge_add_nb(ia, wa, ib, wb)
        ids_b, w_b = kernels.merge_add_np(ia, wa, ib, wb)
        np.testing.assert_array_equal(ids_a, ids_b)
        np.testing.assert_allclose(w_a, w_b, rtol=1e-12)


@needs_numba
def test_match_scores_backends_agree():
    rng = np.random.default_rng(2)
    for _ in range(30):
        indptr = [0]
        tids, tw = [], []
        for _ in range(int(rng.integers(1, 15))):
            ids, w = rand_sparse(rng, max_nnz=12)
            tids.append(ids)
            tw.append(w)
            indptr.append(indptr[-1] + ids.size)
        indptr = np.array(indptr, dtype=np.int64)
        tids = np.concatenate(tids) if tids else np.empty(0, dtype=np.int64)
        tw = np.concatenate(tw) if tw else np.empty(0)
        q_ids, q_w = rand_sparse(rng, max_nnz=6)
        np.testing.assert_allclose(
            kernels.match_scores_nb(indptr, tids, tw, q_ids, q_w),
            kernels.match_scores_np(indptr, tids, tw, q_ids, q_w),
            rtol=1e-12,
        )


def random_csr(rng, n, max_edges):
    edges = set()
    for _ in range(max_edges):
        s, t = int(rng.integers(n)), int(rng.integers(n))
        if s != t:
            edges.add((s, t))
    counts = np.zeros(n + 1, dtype=np.int64)
    for s, _ in edges:
        counts[s + 1] += 1
    indptr = np.cumsum(counts)
    adj = np.empty(len(edges), dtype=np.int64)
    fill = indptr[:-1].copy()
    for s, t in sorted(edges):
        adj[fill[s]] = t
        fill[s] += 1
    return indptr, adj


@needs_numba
def test_clustering_backends_agree():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(2, 40))
        indptr, adj = random_csr(rng, n, 4 * n)
        np.testing.assert_allclose(
            kernels.clustering_nb(indptr, adj),
            kernels.clustering_np(indptr, adj),
            rtol=1e-12,
        )


@needs_numba
def test_apl_bfs_backends_agree():
    rng = np.random.default_rng(4)
    for _ in range(10):
        n = int(rng.integers(2, 40))
        indptr, adj = random_csr(rng, n, 3 * n)
        total_nb, pairs_nb = kernels.apl_bfs_nb(indptr, adj)
        total_np, pairs_np = kernels.apl_bfs_np(indptr, adj)
        assert pairs_nb == pairs_np
        assert total_nb == pytest.approx(total_np)


def test_backend_flag_dispatch():
    # module-level names point at one of the two variants
    assert kernels.BACKEND in ("numba", "numpy")
    if kernels.USE_NUMBA:
        assert kernels.sparse_dot is kernels.sparse_dot_nb
    else:
        assert kernels.sparse_dot is kernels.sparse_dot_np


def test_numpy_fallback_env_flag():
    # a subprocess with PROSA_NUMBA=0 must select the numpy variants
    import os
    import subprocess
    import sys

    env = dict(os.environ, PROSA_NUMBA="0")
    out = subprocess.run(
        [sys.executable, "-c", "from prosa import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.stdout.strip() == "numpy"
