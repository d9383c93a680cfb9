"""Experiment orchestration: bootstrap a network, run a query workload with
one search strategy, aggregate stats, and serialize CSV outputs.

Everything is driven by one seeded numpy Generator, so a given config is
fully reproducible down to the output bytes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import baselines, corpus, metrics, overlay, routing
from .config import ExperimentConfig
from .corpus import PeerProfile, TopicModel
from .metrics import ExperimentStats, GraphSnapshot
from .overlay import Network, Peer
from .routing import QueryTrace

TRACE_HEADER = "query_id,origin,strategy,success,deepness,links_visited,docs_found,messages"
STATS_HEADER = (
    "nodes,edges,strategy,success_rate,avg_links,avg_docs,avg_deepness,"
    "cc,apl,cc_rnd,apl_rnd,cc_ratio"
)
SWEEP_HEADER = "n_nodes,n_edges,CC_prosa,APL_prosa,CC_rnd,APL_rnd,ratio"


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    network: Network
    traces: list[QueryTrace]
    snapshot: GraphSnapshot
    stats: ExperimentStats
    interval_stats: list[tuple[int, ExperimentStats]] = field(default_factory=list)


def bootstrap_network(
    cfg: ExperimentConfig, rng, audit: list | None = None
) -> tuple[Network, list[PeerProfile], TopicModel]:
    """Generate corpus, create peers, and wire the initial random ALs."""
    model = TopicModel(
        n_topics=cfg.n_topics,
        terms_per_topic=cfg.terms_per_topic,
        overlap_fraction=cfg.overlap_fraction,
        zipf_exponent=cfg.zipf_exponent,
        noise_fraction=cfg.noise_fraction,
    )
    profiles = corpus.build_profiles(
        cfg.n_peers, model, cfg.docs_mean, rng, cfg.home_topic_bias
    )
    docs = corpus.generate_corpus(model, profiles, rng, cfg.doc_terms_mean)
    net = Network(audit=audit)
    for pid in range(cfg.n_peers):
        net.add_peer(Peer(pid, docs[pid]))
    all_ids = list(range(cfg.n_peers))
    for pid in range(cfg.n_peers):
        overlay.join_network(net.peers[pid], all_ids, cfg.join_links, rng, audit)
    return net, profiles, model


def run_experiment(cfg: ExperimentConfig, audit: list | None = None) -> ExperimentResult:
    cfg.validate()
    rng = np.random.default_rng(cfg.seed)
    net, profiles, model = bootstrap_network(cfg, rng, audit)
    traces: list[QueryTrace] = []
    interval_stats: list[tuple[int, ExperimentStats]] = []
    for qid in range(cfg.n_queries):
        origin = int(rng.integers(cfg.n_peers))
        qv, required = corpus.generate_query(
            profiles[origin], model, rng, cfg.query_terms_mean, cfg.max_required
        )
        if cfg.strategy == "prosa":
            trace = routing.execute_query(net, origin, qv, required, cfg, rng, qid)
        elif cfg.strategy == "flood":
            trace = baselines.flood_query(net, origin, qv, required, cfg.flood_ttl, cfg, qid)
        else:
            trace = baselines.random_walk_query(net, origin, qv, required, cfg.ttl, cfg, rng, qid)
        trace.strategy = cfg.strategy
        traces.append(trace)
        if cfg.snapshot_interval and (qid + 1) % cfg.snapshot_interval == 0:
            snap = metrics.snapshot_from_network(net)
            interval_stats.append(
                (qid + 1, metrics.aggregate_stats(traces, snap, cfg.cc_exclude_low_degree))
            )
    snapshot = metrics.snapshot_from_network(net)
    stats = metrics.aggregate_stats(traces, snapshot, cfg.cc_exclude_low_degree)
    return ExperimentResult(cfg, net, traces, snapshot, stats, interval_stats)


def _f(x: float) -> str:
    return f"{x:.6f}"


def write_traces_csv(traces: list[QueryTrace], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(TRACE_HEADER + "\n")
        w = csv.writer(fh)
        for t in traces:
            w.writerow(
                [
                    t.query_id,
                    t.origin,
                    t.strategy,
                    int(t.success),
                    t.deepness,
                    len(t.edges_traversed),
                    t.total_docs_found,
                    t.messages_sent,
                ]
            )


def stats_row(snapshot: GraphSnapshot, strategy: str, s: ExperimentStats) -> list[str]:
    ratio = s.cc / s.cc_rnd if s.cc_rnd > 0 else 0.0
    return [
        str(snapshot.n_nodes),
        str(snapshot.n_edges),
        strategy,
        _f(s.success_rate),
        _f(s.avg_links_visited),
        _f(s.avg_docs_retrieved),
        _f(s.avg_deepness),
        _f(s.cc),
        _f(s.apl),
        _f(s.cc_rnd),
        _f(s.apl_rnd),
        _f(ratio),
    ]


def write_stats_csv(rows: list[list[str]], path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(STATS_HEADER + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_sweep_csv(results: list[ExperimentResult], path) -> None:
    """One row per config in the published table's column layout."""
    with open(path, "w", newline="") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for r in results:
            s = r.stats
            ratio = s.cc / s.cc_rnd if s.cc_rnd > 0 else 0.0
            fh.write(
                ",".join(
                    [
                        str(r.snapshot.n_nodes),
                        str(r.snapshot.n_edges),
                        _f(s.cc),
                        _f(s.apl),
                        _f(s.cc_rnd),
                        _f(s.apl_rnd),
                        _f(ratio),
                    ]
                )
                + "\n"
            )
