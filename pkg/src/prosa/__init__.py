"""Deterministic simulator of a self-organizing semantic P2P overlay.

Peers link by social-style rules (acquaintance -> temporary semantic -> full
semantic links), route queries by vector-space relevance, and the resulting
graph develops small-world structure. Flooding and random-walk baselines and
a metrics engine round out the package.
"""

from .config import ExperimentConfig
from .experiment import ExperimentResult, run_experiment
from .overlay import LinkEntry, LinkKind, Network, Peer
from .routing import QueryTrace, execute_query
from .vsm import (
    Document,
    TermVector,
    build_document_vector,
    build_peer_vector,
    build_query_vector,
    relevance,
)

__version__ = "0.1.0"

__all__ = [
    "Document",
    "ExperimentConfig",
    "ExperimentResult",
    "LinkEntry",
    "LinkKind",
    "Network",
    "Peer",
    "QueryTrace",
    "TermVector",
    "build_document_vector",
    "build_peer_vector",
    "build_query_vector",
    "execute_query",
    "relevance",
    "run_experiment",
]
