"""Peer state, the Peer List, and the directed link lifecycle AL -> TSL -> FSL.

Links are directed and never downgrade. An AL carries no knowledge vector; a
TSL carries a temporary peer vector (TPV) accumulated from received query
vectors; an FSL carries the target's true peer vector captured at download
time. The simulation engine is the single writer of any peer's state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import kernels, vsm
from .vsm import Document, TermVector


class LinkKind(enum.IntEnum):
    AL = 0
    TSL = 1
    FSL = 2

    def __str__(self) -> str:  # edge-list serialization
        return self.name


@dataclass
class LinkEntry:
    target: int
    kind: LinkKind
    knowledge: TermVector | None = None  # None for AL, TPV for TSL, PV for FSL


class Peer:
    """One overlay node: shared documents, peer vector, and Peer List."""

    __slots__ = ("id", "documents", "pv", "peer_list", "_doc_ids", "_doc_csr")

    def __init__(self, pid: int, documents: list[Document] | None = None):
        self.id = pid
        self.documents: list[Document] = list(documents) if documents else []
        self.pv: TermVector = (
            vsm.build_peer_vector(self.documents) if self.documents else vsm.empty_vector()
        )
        self.peer_list: dict[int, LinkEntry] = {}
        self._doc_ids: np.ndarray | None = None
        self._doc_csr: tuple | None = None

    def doc_matrix(self):
        """CSR layout of all document vectors, cached until the next ingest."""
        if self._doc_csr is None:
            indptr = [0]
            tids: list[np.ndarray] = []
            tw: list[np.ndarray] = []
            for d in self.documents:
                dv = vsm.build_document_vector(d)
                tids.append(dv.ids)
                tw.append(dv.weights)
                indptr.append(indptr[-1] + dv.ids.size)
            self._doc_ids = np.array([d.doc_id for d in self.documents], dtype=np.int64)
            self._doc_csr = (
                np.array(indptr, dtype=np.int64),
                np.concatenate(tids) if tids else np.empty(0, dtype=np.int64),
                np.concatenate(tw) if tw else np.empty(0, dtype=np.float64),
            )
        return self._doc_ids, self._doc_csr


@dataclass
class Network:
    """All peers of one simulated overlay, plus an optional audit event log.

    When ``audit`` is a list, overlay and routing operations append tuples
    describing every link transition and forward decision; tests use this to
    check protocol invariants. ``None`` disables recording.
    """

    peers: dict[int, Peer] = field(default_factory=dict)
    audit: list | None = None

    def add_peer(self, peer: Peer) -> None:
        self.peers[peer.id] = peer


def _record_link(net_audit, peer: Peer, target: int, old: LinkKind | None, new: LinkKind):
    if net_audit is not None:
        entry = peer.peer_list[target]
        norm = entry.knowledge.norm() if entry.knowledge is not None else None
        net_audit.append(("link", peer.id, target, old, new, norm))


def join_network(peer: Peer, candidates: list[int], n_links: int, rng, audit=None) -> Peer:
    """Bootstrap a joining peer with random acquaintance links."""
    candidates = [c for c in candidates if c != peer.id]
    if not candidates:
        raise ValueError("network empty; first peer joins with empty PL")
    if n_links < 1:
        raise ValueError("n_links must be >= 1")
    k = min(n_links, len(candidates))
    chosen = rng.choice(np.array(sorted(candidates), dtype=np.int64), size=k, replace=False)
    for target in sorted(int(t) for t in chosen):
        peer.peer_list[target] = LinkEntry(target, LinkKind.AL)
        _record_link(audit, peer, target, None, LinkKind.AL)
    return peer


def note_incoming_query(receiver: Peer, sender: int, qv: TermVector, audit=None) -> Peer:
    """Update the receiver's Peer List on receipt of a query from ``sender``.

    Unknown sender or AL: a TSL is created with the QV as its TPV. Existing
    TSL: the QV is added to the TPV and the result renormalized. FSL: no
    change, the true PV is already held.
    """
    if sender == receiver.id:
        raise ValueError("peer cannot link to itself")
    entry = receiver.peer_list.get(sender)
    if entry is None:
        receiver.peer_list[sender] = LinkEntry(sender, LinkKind.TSL, vsm.normalize(qv))
        _record_link(audit, receiver, sender, None, LinkKind.TSL)
    elif entry.kind == LinkKind.AL:
        entry.kind = LinkKind.TSL
        entry.knowledge = vsm.normalize(qv)
        _record_link(audit, receiver, sender, LinkKind.AL, LinkKind.TSL)
    elif entry.kind == LinkKind.TSL:
        entry.knowledge = vsm.accumulate(entry.knowledge, qv)
        _record_link(audit, receiver, sender, LinkKind.TSL, LinkKind.TSL)
    # FSL: nothing to update
    return receiver


def promote_to_fsl(requester: Peer, provider: int, provider_pv: TermVector, audit=None) -> Peer:
    """Establish (or refresh) a full semantic link after a completed download."""
    if provider == requester.id:
        raise ValueError("peer cannot link to itself")
    entry = requester.peer_list.get(provider)
    old = entry.kind if entry is not None else None
    requester.peer_list[provider] = LinkEntry(provider, LinkKind.FSL, provider_pv)
    _record_link(audit, requester, provider, old, LinkKind.FSL)
    return requester


def ingest_document(peer: Peer, doc: Document) -> Peer:
    """Add a document to the peer's share set and refresh its peer vector."""
    doc.validate()
    peer.documents.append(doc)
    peer.pv = vsm.build_peer_vector(peer.documents)
    peer._doc_csr = None
    peer._doc_ids = None
    return peer


def enforce_pl_capacity(peer: Peer, capacity: int) -> Peer:
    """Evict weakest-kind, oldest entries until the Peer List fits ``capacity``."""
    while len(peer.peer_list) > capacity:
        victim = min(peer.peer_list, key=lambda t: (peer.peer_list[t].kind, _age(peer, t)))
        del peer.peer_list[victim]
    return peer


def _age(peer: Peer, target: int) -> int:
    # dict preserves insertion order; position doubles as age
    for i, t in enumerate(peer.peer_list):
        if t == target:
            return i
    return len(peer.peer_list)


def export_graph(network: Network) -> list[tuple[int, int, LinkKind]]:
    """Directed edge list, one edge per Peer List entry, sorted for determinism."""
    edges = []
    for pid in sorted(network.peers):
        peer = network.peers[pid]
        for target in sorted(peer.peer_list):
            edges.append((pid, target, peer.peer_list[target].kind))
    return edges


def write_edge_list(network: Network, path) -> None:
    with open(path, "w") as fh:
        for src, dst, kind in export_graph(network):
            fh.write(f"{src} {dst} {kind}\n")
