"""Flooding and random-walk baselines: reach, determinism, immutability."""

import copy

import numpy as np
import pytest

from prosa import vsm
from prosa.baselines import flood_query, random_walk_query
from prosa.config import ExperimentConfig
from prosa.overlay import LinkEntry, LinkKind, Network, Peer, export_graph
from prosa.vsm import Document


def qvec(entries):
    return vsm.normalize(vsm.from_weights(entries))


CFG = ExperimentConfig(theta_match=0.5)


def star_net(n_leaves=5, with_docs=False):
    net = Network()
    center = Peer(0, [Document(0, {99: 1})])
    net.add_peer(center)
    for i in range(1, n_leaves + 1):
        docs = [Document(i, {1: 2})] if with_docs else [Document(i, {50 + i: 1})]
        net.add_peer(Peer(i, docs))
        center.peer_list[i] = LinkEntry(i, LinkKind.AL)
    return net


def test_flood_star_visits_all_leaves():
    net = star_net(5)
    trace = flood_query(net, 0, qvec({1: 1.0}), 1, 1, CFG)
    assert trace.edges_traversed == {(0, i) for i in range(1, 6)}


def test_flood_finds_resource_within_ttl():
    net = star_net(5, with_docs=True)
    trace = flood_query(net, 0, qvec({1: 1.0}), 1, 1, CFG)
    assert trace.success
    assert trace.deepness == 1
    assert trace.total_docs_found == 5


def test_flood_does_not_mutate_network():
    net = star_net(4, with_docs=True)
    before = export_graph(net)
    flood_query(net, 0, qvec({1: 1.0}), 3, 3, CFG)
    assert export_graph(net) == before


def test_flood_each_peer_processed_once():
    # ring of 4; every peer responds once despite receiving two copies
    net = Network()
    for i in range(4):
        net.add_peer(Peer(i, [Document(i, {1: 2})]))
    for i in range(4):
        net.peers[i].peer_list[(i + 1) % 4] = LinkEntry((i + 1) % 4, LinkKind.AL)
        net.peers[i].peer_list[(i - 1) % 4] = LinkEntry((i - 1) % 4, LinkKind.AL)
    trace = flood_query(net, 0, qvec({99: 1.0}), 1, 8, CFG)
    assert not trace.success
    # every directed edge except returns to the sender appears exactly once
    assert len(trace.edges_traversed) <= 8


def test_flood_ttl_validation():
    with pytest.raises(ValueError):
        flood_query(star_net(2), 0, qvec({1: 1.0}), 1, 0, CFG)


def test_walk_dead_end_at_origin():
    net = Network()
    net.add_peer(Peer(0, [Document(0, {99: 1})]))
    trace = random_walk_query(net, 0, qvec({1: 1.0}), 1, 5, CFG, np.random.default_rng(0))
    assert not trace.success
    assert trace.deepness == 0
    assert trace.edges_traversed == set()


def test_walk_line_graph_forced_path():
    # A - B - C with the resource at C; the walk cannot backtrack
    net = Network()
    net.add_peer(Peer(0, [Document(0, {99: 1})]))
    net.add_peer(Peer(1, [Document(1, {98: 1})]))
    net.add_peer(Peer(2, [Document(2, {1: 2})]))
    net.peers[0].peer_list[1] = LinkEntry(1, LinkKind.AL)
    net.peers[1].peer_list[0] = LinkEntry(0, LinkKind.AL)
    net.peers[1].peer_list[2] = LinkEntry(2, LinkKind.AL)
    net.peers[2].peer_list[1] = LinkEntry(1, LinkKind.AL)
    trace = random_walk_query(net, 0, qvec({1: 1.0}), 1, 2, CFG, np.random.default_rng(0))
    assert trace.success
    assert trace.deepness == 2
    assert trace.edges_traversed == {(0, 1), (1, 2)}


def test_walk_same_seed_same_walk():
    rng_net = np.random.default_rng(11)
    net = Network()
    for i in range(15):
        net.add_peer(Peer(i, [Document(i, {i % 5: 1})]))
    from prosa.overlay import join_network

    for i in range(15):
        join_network(net.peers[i], list(range(15)), 3, rng_net)
    qv = qvec({2: 1.0})
    t1 = random_walk_query(net, 0, qv, 2, 10, CFG, np.random.default_rng(4))
    t2 = random_walk_query(net, 0, qv, 2, 10, CFG, np.random.default_rng(4))
    assert t1.edges_traversed == t2.edges_traversed
    assert t1.responders == t2.responders


def test_walk_does_not_mutate_network():
    net = star_net(4, with_docs=True)
    before = copy.deepcopy(export_graph(net))
    random_walk_query(net, 0, qvec({1: 1.0}), 2, 6, CFG, np.random.default_rng(0))
    assert export_graph(net) == before


def test_walk_edge_count_bounded_by_ttl():
    net = star_net(6)
    for hop in range(1, 7):
        trace = random_walk_query(
            net, 0, qvec({999: 1.0}), 1, hop, CFG, np.random.default_rng(hop)
        )
        assert trace.messages_sent <= hop
