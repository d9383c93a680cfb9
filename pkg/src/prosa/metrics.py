"""Small-world measurements: directed clustering coefficient, random-graph
reference formulas, shortest-path APL, and per-experiment aggregates.

The clustering coefficient of a node uses its OUT-neighbourhood only; edges
between neighbours count in each direction separately, against a maximum of
k(k-1). Nodes with out-degree <= 1 contribute 0 by convention (optionally
excluded from the graph mean).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .overlay import Network
from .routing import QueryTrace


@dataclass
class GraphSnapshot:
    nodes: list[int]
    edges: set[tuple[int, int]]
    _csr: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def csr(self):
        """(index-of-node map, indptr, adjacency) with rows sorted."""
        if self._csr is None:
            index = {n: i for i, n in enumerate(sorted(self.nodes))}
            n = len(index)
            deg = np.zeros(n + 1, dtype=np.int64)
            for s, _ in self.edges:
                deg[index[s] + 1] += 1
            indptr = np.cumsum(deg)
            adj = np.empty(len(self.edges), dtype=np.int64)
            fill = indptr[:-1].copy()
            for s, t in sorted(self.edges):
                si = index[s]
                adj[fill[si]] = index[t]
                fill[si] += 1
            self._csr = (index, indptr, adj)
        return self._csr


def snapshot_from_network(net: Network) -> GraphSnapshot:
    edges = {
        (pid, target)
        for pid, peer in net.peers.items()
        for target in peer.peer_list
    }
    return GraphSnapshot(sorted(net.peers), edges)


def clustering_coefficient_node(g: GraphSnapshot, n: int) -> float:
    if n not in g.nodes:
        raise ValueError(f"unknown node {n}")
    index, indptr, adj = g.csr()
    return float(_clustering_all(g)[index[n]])


def _clustering_all(g: GraphSnapshot) -> np.ndarray:
    _, indptr, adj = g.csr()
    return kernels.clustering(indptr, adj)


def clustering_coefficient_graph(g: GraphSnapshot, exclude_low_degree: bool = False) -> float:
    """Mean of per-node coefficients over all nodes (or only out-degree >= 2)."""
    if g.n_nodes == 0:
        raise ValueError("empty graph")
    cc = _clustering_all(g)
    if exclude_low_degree:
        _, indptr, _ = g.csr()
        deg = np.diff(indptr)
        keep = deg >= 2
        if not keep.any():
            return 0.0
        return float(cc[keep].mean())
    return float(cc.mean())


def cc_random(v: int, e: int) -> float:
    """Clustering coefficient of the equivalent random directed graph."""
    if v < 2:
        raise ValueError("need at least 2 nodes")
    return e / (v * (v - 1))


def apl_random(v: int, e: int) -> float:
    """Average path length of the equivalent random graph: ln|V| / ln(|E|/|V|)."""
    if v < 2:
        raise ValueError("need at least 2 nodes")
    if e <= v:
        raise ValueError("mean degree <= 1; formula undefined")
    return math.log(v) / math.log(e / v)


def true_apl(g: GraphSnapshot) -> float:
    """Exact average shortest-path length over reachable ordered pairs."""
    _, indptr, adj = g.csr()
    total, pairs = kernels.apl_bfs(indptr, adj)
    if pairs == 0:
        return 0.0
    return float(total) / pairs


@dataclass
class ExperimentStats:
    success_rate: float
    avg_links_visited: float
    avg_docs_retrieved: float
    avg_deepness: float
    cc: float
    apl: float
    cc_rnd: float
    apl_rnd: float
    no_successes: bool = False


def aggregate_stats(
    traces: list[QueryTrace], g: GraphSnapshot, exclude_low_degree: bool = False
) -> ExperimentStats:
    """Per-run aggregates: links-visited and deepness average over SUCCESSFUL
    traces only; docs-retrieved averages over all traces."""
    if not traces:
        raise ValueError("no traces to aggregate")
    ok = [t for t in traces if t.success]
    success_rate = len(ok) / len(traces)
    if ok:
        avg_links = sum(len(t.edges_traversed) for t in ok) / len(ok)
        avg_deep = sum(t.deepness for t in ok) / len(ok)
    else:
        avg_links = 0.0
        avg_deep = 0.0
    avg_docs = sum(t.total_docs_found for t in traces) / len(traces)
    cc = clustering_coefficient_graph(g, exclude_low_degree)
    v, e = g.n_nodes, g.n_edges
    return ExperimentStats(
        success_rate=success_rate,
        avg_links_visited=avg_links,
        avg_docs_retrieved=avg_docs,
        avg_deepness=avg_deep,
        cc=cc,
        apl=avg_deep,
        cc_rnd=cc_random(v, e),
        apl_rnd=apl_random(v, e) if e > v else float("nan"),
        no_successes=not ok,
    )
