"""Comparison search strategies: pure flooding and a single random walker.

Both run over a frozen overlay snapshot: they match documents and produce
QueryTraces but never touch any Peer List.
"""

from __future__ import annotations

from collections import deque

from .config import ExperimentConfig
from .overlay import Network
from .routing import QueryTrace, ResponseMessage, local_match
from .vsm import TermVector


def flood_query(
    net: Network,
    origin: int,
    qv: TermVector,
    required: int,
    ttl: int,
    cfg: ExperimentConfig,
    query_id: int = 0,
) -> QueryTrace:
    """Breadth-first propagation over every link, duplicate receipts dropped."""
    if ttl < 1:
        raise ValueError("ttl must be >= 1")
    if origin not in net.peers:
        raise ValueError(f"unknown origin peer {origin}")
    trace = QueryTrace(query_id, origin, strategy="flood")
    local = local_match(net.peers[origin], qv, cfg.theta_match)
    trace.total_docs_found = len(local)
    if len(local) >= required:
        trace.success = True
        return trace

    first_hit = None
    fulfilled_at = None
    processed = {origin}
    queue: deque[tuple[int, int, int]] = deque()  # (peer, hops, sender)
    for target in sorted(net.peers[origin].peer_list):
        trace.edges_traversed.add((origin, target))
        trace.messages_sent += 1
        queue.append((target, 1, origin))
    while queue:
        pid, hops, sender = queue.popleft()
        if pid in processed:
            continue
        processed.add(pid)
        peer = net.peers[pid]
        matches = local_match(peer, qv, cfg.theta_match)
        if matches:
            trace.responders.append(pid)
            trace.total_docs_found += len(matches)
            trace.messages_sent += 1
            if first_hit is None:
                first_hit = hops
            if fulfilled_at is None and trace.total_docs_found >= required:
                fulfilled_at = hops
        if hops < ttl:
            for target in sorted(peer.peer_list):
                if target == sender:
                    continue
                trace.edges_traversed.add((pid, target))
                trace.messages_sent += 1
                queue.append((target, hops + 1, pid))
    trace.success = trace.total_docs_found >= 1
    if fulfilled_at is not None:
        trace.deepness = fulfilled_at
    elif first_hit is not None:
        trace.deepness = first_hit
    return trace


def random_walk_query(
    net: Network,
    origin: int,
    qv: TermVector,
    required: int,
    ttl: int,
    cfg: ExperimentConfig,
    rng,
    query_id: int = 0,
) -> QueryTrace:
    """Single walker choosing uniformly among links, avoiding an immediate
    backtrack when an alternative exists; stops on satisfaction, dead end,
    or TTL."""
    if ttl < 1:
        raise ValueError("ttl must be >= 1")
    if origin not in net.peers:
        raise ValueError(f"unknown origin peer {origin}")
    trace = QueryTrace(query_id, origin, strategy="randomwalk")
    local = local_match(net.peers[origin], qv, cfg.theta_match)
    trace.total_docs_found = len(local)
    if len(local) >= required:
        trace.success = True
        return trace

    first_hit = None
    fulfilled_at = None
    current = origin
    prev = None
    matched_at: set[int] = set()
    for hops in range(1, ttl + 1):
        links = sorted(net.peers[current].peer_list)
        choices = [t for t in links if t != prev] or links
        if not choices:
            break  # dead end
        nxt = choices[int(rng.integers(len(choices)))]
        trace.edges_traversed.add((current, nxt))
        trace.messages_sent += 1
        prev, current = current, nxt
        if current in matched_at:
            continue  # revisit: documents already counted
        matches = local_match(net.peers[current], qv, cfg.theta_match)
        if matches:
            matched_at.add(current)
            trace.responders.append(current)
            trace.total_docs_found += len(matches)
            trace.messages_sent += 1
            if first_hit is None:
                first_hit = hops
            if trace.total_docs_found >= required:
                fulfilled_at = hops
                break
    trace.success = trace.total_docs_found >= 1
    if fulfilled_at is not None:
        trace.deepness = fulfilled_at
    elif first_hit is not None:
        trace.deepness = first_hit
    return trace
