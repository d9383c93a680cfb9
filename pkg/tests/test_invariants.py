"""Protocol invariant suite over full simulation runs with auditing enabled.

One seeded 150-peer run with several thousand queries produces well over 10^4
audited events (link transitions, forward decisions, branch extensions); the
invariants are asserted over all of them.
"""

import copy

import numpy as np
import pytest

from prosa import experiment, metrics
from prosa.config import ExperimentConfig
from prosa.overlay import LinkKind


CFG = ExperimentConfig(n_peers=150, n_queries=3000, seed=11)


@pytest.fixture(scope="module")
def audited_run():
    audit = []
    res = experiment.run_experiment(copy.deepcopy(CFG), audit=audit)
    assert len(audit) >= 10_000, "not enough events to exercise the invariants"
    return res, audit


def test_link_kind_monotone(audited_run):
    _, audit = audited_run
    seen = {}
    for ev in audit:
        if ev[0] != "link":
            continue
        _, peer, target, old, new, _ = ev
        prev = seen.get((peer, target))
        if prev is not None:
            assert new >= prev, f"link {peer}->{target} downgraded {prev}->{new}"
        seen[(peer, target)] = new


def test_tpv_normalized_after_every_update(audited_run):
    _, audit = audited_run
    checked = 0
    for ev in audit:
        if ev[0] == "link" and ev[4] == LinkKind.TSL:
            norm = ev[5]
            assert norm == pytest.approx(1.0, abs=1e-9)
            checked += 1
    assert checked > 1000


def test_no_self_links(audited_run):
    res, _ = audited_run
    for pid, peer in res.network.peers.items():
        assert pid not in peer.peer_list


def test_branch_loop_freedom(audited_run):
    _, audit = audited_run
    checked = 0
    for ev in audit:
        if ev[0] != "send":
            continue
        _, _, path, target = ev
        assert target not in path, f"branch revisited {target} via {path}"
        assert len(set(path)) == len(path)
        checked += 1
    assert checked > 5000


def test_remaining_counter_conservation(audited_run):
    _, audit = audited_run
    for ev in audit:
        if ev[0] != "counter":
            continue
        _, _, received, matched, forwarded = ev
        assert forwarded == received - matched
        assert forwarded >= 1  # forwarding only happens while results are owed


def test_success_iff_docs_found(audited_run):
    res, _ = audited_run
    for t in res.traces:
        assert t.success == (t.total_docs_found >= 1)


def test_deepness_bounds(audited_run):
    res, _ = audited_run
    for t in res.traces:
        assert 0 <= t.deepness <= CFG.ttl


def test_tsl_creation_attributable_to_query_edges(audited_run):
    res, audit = audited_run
    traversed = set()
    for t in res.traces:
        traversed |= t.edges_traversed
    for ev in audit:
        if ev[0] == "link" and ev[4] == LinkKind.TSL and ev[3] in (None, LinkKind.AL):
            _, peer, target, _, _, _ = ev
            # a TSL peer->target arises from a query received over target->peer
            assert (target, peer) in traversed


def test_fsl_knowledge_matches_provider_pv_at_promotion(audited_run):
    res, _ = audited_run
    # spot-check current FSLs whose provider has not changed since: knowledge
    # must be a normalized vector over the provider's term space
    for peer in res.network.peers.values():
        for entry in peer.peer_list.values():
            if entry.kind == LinkKind.FSL:
                assert entry.knowledge.norm() == pytest.approx(1.0, abs=1e-9)


def test_full_run_determinism():
    cfg = ExperimentConfig(n_peers=60, n_queries=500, seed=21)
    a = experiment.run_experiment(copy.deepcopy(cfg))
    b = experiment.run_experiment(copy.deepcopy(cfg))
    for ta, tb in zip(a.traces, b.traces):
        assert ta.edges_traversed == tb.edges_traversed
        assert (ta.success, ta.deepness, ta.total_docs_found, ta.messages_sent) == (
            tb.success,
            tb.deepness,
            tb.total_docs_found,
            tb.messages_sent,
        )
    assert a.snapshot == b.snapshot


def test_baselines_leave_graph_untouched():
    from prosa import baselines, corpus

    cfg = ExperimentConfig(n_peers=80, n_queries=1, seed=31)
    rng = np.random.default_rng(cfg.seed)
    net, profiles, model = experiment.bootstrap_network(cfg, rng)
    before = metrics.snapshot_from_network(net)
    for qid in range(300):
        origin = int(rng.integers(cfg.n_peers))
        qv, required = corpus.generate_query(profiles[origin], model, rng)
        baselines.flood_query(net, origin, qv, required, cfg.flood_ttl, cfg, qid)
        baselines.random_walk_query(net, origin, qv, required, cfg.ttl, cfg, rng, qid)
    assert metrics.snapshot_from_network(net) == before
