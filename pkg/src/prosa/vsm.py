"""Vector space model: document, query, and peer vectors plus relevance.

Term weights use the sublinear scheme 1 + ln(f) on raw frequencies. Document
vectors stay unnormalized; peer and query vectors are Euclidean-normalized.
Relevance between two vectors is the dot product over their shared terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels

NORM_TOL = 1e-9


@dataclass(eq=False)
class TermVector:
    """Sparse term->weight vector as parallel (sorted ids, weights) arrays."""

    ids: np.ndarray  # int64, strictly increasing
    weights: np.ndarray  # float64, all > 0
    normalized: bool = False

    def __len__(self) -> int:
        return int(self.ids.size)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.weights, self.weights)))

    def to_dict(self) -> dict[int, float]:
        return {int(t): float(w) for t, w in zip(self.ids, self.weights)}


def empty_vector() -> TermVector:
    return TermVector(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))


def from_weights(entries: dict[int, float], normalized: bool = False) -> TermVector:
    """Build a TermVector from a term->weight map, dropping zero weights."""
    items = sorted((t, w) for t, w in entries.items() if w != 0.0)
    ids = np.array([t for t, _ in items], dtype=np.int64)
    weights = np.array([w for _, w in items], dtype=np.float64)
    return TermVector(ids, weights, normalized)


def normalize(v: TermVector) -> TermVector:
    n = v.norm()
    if n == 0.0:
        return empty_vector()
    return TermVector(v.ids, v.weights / n, True)


@dataclass
class Document:
    doc_id: int
    term_counts: dict[int, int] = field(default_factory=dict)

    def validate(self) -> None:
        if not self.term_counts:
            raise ValueError("empty document")
        if any(c < 1 for c in self.term_counts.values()):
            raise ValueError("term counts must be >= 1")


def _sublinear(counts: dict[int, float]) -> TermVector:
    return from_weights({t: 1.0 + math.log(f) for t, f in counts.items()})


def build_document_vector(doc: Document) -> TermVector:
    """Weight each term 1 + ln(f); the result is deliberately NOT normalized."""
    doc.validate()
    return _sublinear(doc.term_counts)


def build_peer_vector(docs: list[Document]) -> TermVector:
    """Sum term frequencies across docs, weight 1 + ln(F), then normalize."""
    if not docs:
        raise ValueError("peer has no documents")
    totals: dict[int, float] = {}
    for d in docs:
        d.validate()
        for t, f in d.term_counts.items():
            totals[t] = totals.get(t, 0.0) + f
    return normalize(_sublinear(totals))


def build_query_vector(terms: list[int]) -> TermVector:
    """Same 1 + ln(f) scheme over within-query counts, then normalized."""
    if not terms:
        raise ValueError("empty query")
    counts: dict[int, float] = {}
    for t in terms:
        counts[t] = counts.get(t, 0.0) + 1.0
    return normalize(_sublinear(counts))


def relevance(a: TermVector, b: TermVector) -> float:
    """Dot product over shared terms; 0 when supports are disjoint."""
    if a.ids.size == 0 or b.ids.size == 0:
        return 0.0
    return float(kernels.sparse_dot(a.ids, a.weights, b.ids, b.weights))


def accumulate(a: TermVector, b: TermVector) -> TermVector:
    """Element-wise sum of two vectors followed by normalization."""
    ids, w = kernels.merge_add(a.ids, a.weights, b.ids, b.weights)
    return normalize(TermVector(np.asarray(ids), np.asarray(w)))
