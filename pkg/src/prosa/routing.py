"""Semantic query routing: local matching, best-link forwarding, semantic
flooding, responses, downloads, and FSL creation.

One query is executed as a deterministic FIFO cascade of message events. Each
peer processes a given query id at most once (duplicate receipts are dropped);
each branch carries its own visited path, so no branch revisits a peer. A hop
TTL bounds branch depth. Responses travel directly to the query source.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import overlay, vsm
from .config import ExperimentConfig
from .overlay import LinkKind, Network, Peer
from .vsm import Document, TermVector, relevance


@dataclass
class QueryMessage:
    query_id: int
    qv: TermVector
    source: int
    remaining: int
    hops: int
    sender: int
    path: tuple[int, ...]  # peers already visited on this branch


@dataclass
class ResponseMessage:
    responder: int
    query_id: int
    matches: list[tuple[int, float]]  # (doc_id, relevance), descending
    responder_pv: TermVector
    hops: int = 0


@dataclass
class QueryTrace:
    query_id: int
    origin: int
    strategy: str = "prosa"
    edges_traversed: set[tuple[int, int]] = field(default_factory=set)
    responders: list[int] = field(default_factory=list)
    total_docs_found: int = 0
    deepness: int = 0
    success: bool = False
    messages_sent: int = 0


def local_match(peer: Peer, qv: TermVector, threshold: float) -> list[tuple[int, float]]:
    """All documents whose relevance to ``qv`` reaches ``threshold``.

    Sorted by descending score, ties broken by ascending doc id.
    """
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    if not peer.documents or qv.ids.size == 0:
        return []
    doc_ids, (indptr, tids, tw) = peer.doc_matrix()
    from . import kernels

    scores = kernels.match_scores(indptr, tids, tw, qv.ids, qv.weights)
    keep = (scores >= threshold) & (scores > 0.0)  # disjoint docs never match
    hits = [(int(doc_ids[i]), float(scores[i])) for i in np.flatnonzero(keep)]
    hits.sort(key=lambda m: (-m[1], m[0]))
    return hits


def select_next_hop(peer: Peer, qv: TermVector, exclude: set[int], rng) -> int | None:
    """Best semantic link by knowledge relevance, else a uniform random AL.

    Ties on relevance go to the smallest peer id. Returns None when every
    link is excluded.
    """
    best = None
    best_rel = -1.0
    als = []
    for target in sorted(peer.peer_list):
        if target in exclude:
            continue
        entry = peer.peer_list[target]
        if entry.kind == LinkKind.AL:
            als.append(target)
        else:
            rel = relevance(entry.knowledge, qv)
            if rel > best_rel:
                best = target
                best_rel = rel
    if best is not None:
        return best
    if als:
        return als[int(rng.integers(len(als)))]
    return None


def semantic_flood_targets(
    peer: Peer, qv: TermVector, threshold: float, exclude: set[int]
) -> list[int]:
    """Links whose knowledge relevance to the query strictly exceeds threshold."""
    targets = []
    for target in sorted(peer.peer_list):
        if target in exclude:
            continue
        entry = peer.peer_list[target]
        if entry.knowledge is not None and relevance(entry.knowledge, qv) > threshold:
            targets.append(target)
    return targets


def download_policy(
    responses: list[ResponseMessage], required: int
) -> list[tuple[int, int]]:
    """Simulated user: accept offers in descending relevance up to ``required``."""
    offers = []
    for r in responses:
        for doc_id, score in r.matches:
            offers.append((score, r.responder, doc_id))
    offers.sort(key=lambda o: (-o[0], o[1], o[2]))
    return [(provider, doc_id) for _, provider, doc_id in offers[:required]]


def execute_query(
    net: Network,
    origin: int,
    qv: TermVector,
    required: int,
    cfg: ExperimentConfig,
    rng,
    query_id: int = 0,
) -> QueryTrace:
    """Run one query through the overlay, mutating links as the protocol says."""
    if origin not in net.peers:
        raise ValueError(f"unknown origin peer {origin}")
    if required < 1:
        raise ValueError("required must be >= 1")
    audit = net.audit
    trace = QueryTrace(query_id, origin)
    origin_peer = net.peers[origin]

    local = local_match(origin_peer, qv, cfg.theta_match)
    trace.total_docs_found = len(local)
    if len(local) >= required:
        trace.success = True
        return trace

    remaining = required - len(local)
    responses: list[ResponseMessage] = []
    queue: deque[QueryMessage] = deque()
    processed = {origin}  # query-id duplicate suppression, network-wide

    def send(sender: int, target: int, rem: int, hops: int, path: tuple[int, ...]):
        trace.edges_traversed.add((sender, target))
        trace.messages_sent += 1
        if audit is not None:
            audit.append(("send", query_id, path, target))
        queue.append(QueryMessage(query_id, qv, origin, rem, hops, sender, path + (target,)))

    # initial fan-out from the origin
    if local:
        targets = semantic_flood_targets(origin_peer, qv, cfg.theta_flood, {origin})
        if not targets and cfg.partial_fallback_forward:
            nh = select_next_hop(origin_peer, qv, {origin}, rng)
            targets = [nh] if nh is not None else []
    else:
        nh = select_next_hop(origin_peer, qv, {origin}, rng)
        targets = [nh] if nh is not None else []
    for t in targets:
        send(origin, t, remaining, 1, (origin,))

    while queue:
        msg = queue.popleft()
        pid = msg.path[-1]
        if pid in processed:
            continue
        processed.add(pid)
        peer = net.peers[pid]
        overlay.note_incoming_query(peer, msg.sender, qv, audit)
        if cfg.pl_capacity:
            overlay.enforce_pl_capacity(peer, cfg.pl_capacity)
        matches = local_match(peer, qv, cfg.theta_match)
        exclude = set(msg.path)
        if not matches:
            if audit is not None:
                audit.append(("counter", query_id, msg.remaining, 0, msg.remaining))
            if msg.hops < cfg.ttl:
                nh = select_next_hop(peer, qv, exclude, rng)
                if nh is not None:
                    send(pid, nh, msg.remaining, msg.hops + 1, msg.path)
            continue
        # respond directly to the source
        responses.append(ResponseMessage(pid, query_id, matches, peer.pv, msg.hops))
        trace.responders.append(pid)
        trace.total_docs_found += len(matches)
        trace.messages_sent += 1
        if len(matches) >= msg.remaining:
            continue  # request fulfilled on this branch, stop forwarding
        forwarded = msg.remaining - len(matches)
        if audit is not None:
            audit.append(("counter", query_id, msg.remaining, len(matches), forwarded))
        if msg.hops < cfg.ttl:
            flood = semantic_flood_targets(peer, qv, cfg.theta_flood, exclude)
            if not flood and cfg.partial_fallback_forward:
                nh = select_next_hop(peer, qv, exclude, rng)
                flood = [nh] if nh is not None else []
            for t in flood:
                send(pid, t, forwarded, msg.hops + 1, msg.path)

    trace.success = trace.total_docs_found >= 1
    # deepness: hop of the receipt that fulfilled the request; if the query
    # was never fully satisfied, hop of the first response
    if responses:
        cum = len(local)
        fulfilled = None
        for r in responses:
            cum += len(r.matches)
            if cum >= required:
                fulfilled = r.hops
                break
        trace.deepness = fulfilled if fulfilled is not None else responses[0].hops

    # download phase: accept offers, establish FSLs, optionally ingest copies
    accepted = download_policy(responses, remaining)
    promoted: set[int] = set()
    for provider, doc_id in accepted:
        if provider not in promoted:
            overlay.promote_to_fsl(origin_peer, provider, net.peers[provider].pv, audit)
            promoted.add(provider)
        if cfg.ingest_downloads:
            src_doc = next(
                d for d in net.peers[provider].documents if d.doc_id == doc_id
            )
            overlay.ingest_document(origin_peer, Document(doc_id, dict(src_doc.term_counts)))
    if promoted and cfg.pl_capacity:
        overlay.enforce_pl_capacity(origin_peer, cfg.pl_capacity)
    return trace
