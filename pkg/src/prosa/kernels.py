"""Numeric kernels: numba fast path with a pure-numpy fallback.

Every kernel exists in two variants: ``*_nb`` (numba ``@njit``) and ``*_np``
(pure numpy/python). The module-level names (``sparse_dot`` etc.) dispatch to
one variant at import time: numba when available, unless the environment
variable ``PROSA_NUMBA=0`` forces the fallback. Both variants are importable
directly so the benchmark can time them side by side.

Sparse vectors are passed as parallel arrays: sorted int64 term ids and
float64 weights. Graphs are passed in CSR form: ``indptr`` (int64, length
n+1) and ``adj`` (int64 targets, sorted within each row).
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap


# ---------------------------------------------------------------------------
# sparse dot product over the id intersection

@njit(cache=True)
def sparse_dot_nb(ids_a, wa, ids_b, wb):
    i = 0
    j = 0
    acc = 0.0
    na = ids_a.size
    nb = ids_b.size
    while i < na and j < nb:
        da = ids_a[i]
        db = ids_b[j]
        if da == db:
            acc += wa[i] * wb[j]
            i += 1
            j += 1
        elif da < db:
            i += 1
        else:
            j += 1
    return acc


def sparse_dot_np(ids_a, wa, ids_b, wb):
    if ids_a.size == 0 or ids_b.size == 0:
        return 0.0
    _, ia, ib = np.intersect1d(ids_a, ids_b, assume_unique=True, return_indices=True)
    if ia.size == 0:
        return 0.0
    return float(np.sum(wa[ia] * wb[ib]))


# ---------------------------------------------------------------------------
# merged union of two sparse vectors with weights summed

@njit(cache=True)
def merge_add_nb(ids_a, wa, ids_b, wb):
    na = ids_a.size
    nb = ids_b.size
    out_ids = np.empty(na + nb, dtype=np.int64)
    out_w = np.empty(na + nb, dtype=np.float64)
    i = 0
    j = 0
    k = 0
    while i < na and j < nb:
        da = ids_a[i]
        db = ids_b[j]
        if da == db:
            out_ids[k] = da
            out_w[k] = wa[i] + wb[j]
            i += 1
            j += 1
        elif da < db:
            out_ids[k] = da
            out_w[k] = wa[i]
            i += 1
        else:
            out_ids[k] = db
            out_w[k] = wb[j]
            j += 1
        k += 1
    while i < na:
        out_ids[k] = ids_a[i]
        out_w[k] = wa[i]
        i += 1
        k += 1
    while j < nb:
        out_ids[k] = ids_b[j]
        out_w[k] = wb[j]
        j += 1
        k += 1
    return out_ids[:k].copy(), out_w[:k].copy()


def merge_add_np(ids_a, wa, ids_b, wb):
    ids = np.concatenate((ids_a, ids_b))
    w = np.concatenate((wa, wb))
    uids, inv = np.unique(ids, return_inverse=True)
    out = np.zeros(uids.size, dtype=np.float64)
    np.add.at(out, inv, w)
    return uids, out


# ---------------------------------------------------------------------------
# per-document dot products against one query vector
#
# Documents are concatenated in CSR layout: doc d owns tids[indptr[d]:indptr[d+1]]
# with matching weights, ids sorted within each document.

@njit(cache=True)
def match_scores_nb(indptr, tids, tw, q_ids, q_w):
    n_docs = indptr.size - 1
    scores = np.zeros(n_docs, dtype=np.float64)
    nq = q_ids.size
    for d in range(n_docs):
        i = indptr[d]
        end = indptr[d + 1]
        j = 0
        acc = 0.0
        while i < end and j < nq:
            da = tids[i]
            db = q_ids[j]
            if da == db:
                acc += tw[i] * q_w[j]
                i += 1
                j += 1
            elif da < db:
                i += 1
            else:
                j += 1
        scores[d] = acc
    return scores


def match_scores_np(indptr, tids, tw, q_ids, q_w):
    n_docs = indptr.size - 1
    scores = np.zeros(n_docs, dtype=np.float64)
    for d in range(n_docs):
        sl = slice(indptr[d], indptr[d + 1])
        scores[d] = sparse_dot_np(tids[sl], tw[sl], q_ids, q_w)
    return scores


# ---------------------------------------------------------------------------
# directed clustering coefficient per node
#
# For node n with out-neighbours N(n), counts directed edges u->v with
# u, v in N(n), u != v, and divides by k(k-1). Out-degree <= 1 yields 0.

@njit(cache=True)
def clustering_nb(indptr, adj):
    n = indptr.size - 1
    cc = np.zeros(n, dtype=np.float64)
    for node in range(n):
        start = indptr[node]
        k = indptr[node + 1] - start
        if k <= 1:
            continue
        count = 0
        for ui in range(start, start + k):
            u = adj[ui]
            # binary-search each neighbour v in u's (sorted) adjacency row
            row_lo = indptr[u]
            row_hi = indptr[u + 1]
            for vi in range(start, start + k):
                v = adj[vi]
                if v == u:
                    continue
                lo = row_lo
                hi = row_hi
                while lo < hi:
                    mid = (lo + hi) // 2
                    if adj[mid] < v:
                        lo = mid + 1
                    else:
                        hi = mid
                if lo < row_hi and adj[lo] == v:
                    count += 1
        cc[node] = count / (k * (k - 1))
    return cc


def clustering_np(indptr, adj):
    n = indptr.size - 1
    cc = np.zeros(n, dtype=np.float64)
    for node in range(n):
        nbrs = adj[indptr[node] : indptr[node + 1]]
        k = nbrs.size
        if k <= 1:
            continue
        count = 0
        for u in nbrs:
            row = adj[indptr[u] : indptr[u + 1]]
            count += int(np.isin(row, nbrs).sum())
            # u->u cannot occur (no self-edges), so no correction needed
        cc[node] = count / (k * (k - 1))
    return cc


# ---------------------------------------------------------------------------
# all-pairs shortest paths by BFS; returns (sum of distances, reachable pairs)

@njit(cache=True)
def apl_bfs_nb(indptr, adj):
    n = indptr.size - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    total = 0.0
    pairs = 0
    for src in range(n):
        dist[:] = -1
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for ei in range(indptr[u], indptr[u + 1]):
                v = adj[ei]
                if dist[v] < 0:
                    dist[v] = du + 1
                    queue[tail] = v
                    tail += 1
        for v in range(n):
            if v != src and dist[v] > 0:
                total += dist[v]
                pairs += 1
    return total, pairs


def apl_bfs_np(indptr, adj):
    from collections import deque

    n = indptr.size - 1
    total = 0.0
    pairs = 0
    for src in range(n):
        dist = np.full(n, -1, dtype=np.int64)
        dist[src] = 0
        q = deque([src])
        while q:
            u = q.popleft()
            for v in adj[indptr[u] : indptr[u + 1]]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(int(v))
        reach = dist > 0
        total += float(dist[reach].sum())
        pairs += int(reach.sum())
    return total, pairs


# ---------------------------------------------------------------------------
# dispatch

USE_NUMBA = HAVE_NUMBA and os.environ.get("PROSA_NUMBA", "1") != "0"

if USE_NUMBA:
    sparse_dot = sparse_dot_nb
    merge_add = merge_add_nb
    match_scores = match_scores_nb
    clustering = clustering_nb
    apl_bfs = apl_bfs_nb
else:
    sparse_dot = sparse_dot_np
    merge_add = merge_add_np
    match_scores = match_scores_np
    clustering = clustering_np
    apl_bfs = apl_bfs_np

BACKEND = "numba" if USE_NUMBA else "numpy"
