"""Synthetic topic-structured corpus and query workload generation.

Terms are abstract integer ids partitioned into topics whose ranges may
overlap at the edges. Each topic draws terms from a Zipf distribution over
its own range; each peer has a home topic supplying its documents and a
(usually identical) query-interest topic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .vsm import Document, TermVector, build_query_vector


@dataclass
class TopicModel:
    n_topics: int = 10
    terms_per_topic: int = 200
    overlap_fraction: float = 0.1
    zipf_exponent: float = 1.0
    noise_fraction: float = 0.0
    _topics: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if self.n_topics < 1 or self.terms_per_topic < 1:
            raise ValueError("need >= 1 topic and >= 1 term per topic")
        if not 0.0 <= self.overlap_fraction < 1.0:
            raise ValueError("overlap_fraction must be in [0, 1)")
        shared = int(self.overlap_fraction * self.terms_per_topic)
        stride = self.terms_per_topic - shared
        ranks = np.arange(1, self.terms_per_topic + 1, dtype=np.float64)
        probs = ranks ** (-self.zipf_exponent)
        probs /= probs.sum()
        for i in range(self.n_topics):
            start = i * stride
            terms = np.arange(start, start + self.terms_per_topic, dtype=np.int64)
            self._topics.append((terms, probs))

    def topic_terms(self, topic: int) -> np.ndarray:
        return self._topics[topic][0]

    def draw_terms(self, topic: int, count: int, rng) -> np.ndarray:
        terms, probs = self._topics[topic]
        drawn = rng.choice(terms, size=count, p=probs)
        if self.noise_fraction > 0.0 and self.n_topics > 1:
            noisy = rng.random(count) < self.noise_fraction
            for i in np.flatnonzero(noisy):
                other = int(rng.integers(self.n_topics - 1))
                if other >= topic:
                    other += 1
                oterms, oprobs = self._topics[other]
                drawn[i] = rng.choice(oterms, p=oprobs)
        return drawn


@dataclass
class PeerProfile:
    peer: int
    home_topic: int
    docs_mean: float
    query_interest: int


def build_profiles(
    n_peers: int, model: TopicModel, docs_mean: float, rng, home_topic_bias: float = 0.9
) -> list[PeerProfile]:
    """Uniform home topics; query interest follows the home topic with the
    given probability, otherwise a uniform different topic."""
    profiles = []
    for pid in range(n_peers):
        home = int(rng.integers(model.n_topics))
        interest = home
        if model.n_topics > 1 and rng.random() >= home_topic_bias:
            interest = int(rng.integers(model.n_topics - 1))
            if interest >= home:
                interest += 1
        profiles.append(PeerProfile(pid, home, docs_mean, interest))
    return profiles


def generate_corpus(
    model: TopicModel,
    profiles: list[PeerProfile],
    rng,
    doc_terms_mean: float = 10.0,
) -> dict[int, list[Document]]:
    """Poisson(docs_mean) documents per peer (at least 1), terms drawn from
    the peer's home topic."""
    corpus: dict[int, list[Document]] = {}
    next_doc_id = 0
    for prof in profiles:
        n_docs = max(1, int(rng.poisson(prof.docs_mean)))
        docs = []
        for _ in range(n_docs):
            length = max(1, int(rng.poisson(doc_terms_mean)))
            tokens = model.draw_terms(prof.home_topic, length, rng)
            terms, counts = np.unique(tokens, return_counts=True)
            docs.append(Document(next_doc_id, {int(t): int(c) for t, c in zip(terms, counts)}))
            next_doc_id += 1
        corpus[prof.peer] = docs
    return corpus


def generate_query(
    profile: PeerProfile,
    model: TopicModel,
    rng,
    mean_terms: float = 4.0,
    max_required: int = 5,
) -> tuple[TermVector, int]:
    """Poisson-length query from the peer's interest topic plus a uniform
    required-result count in [1, max_required]."""
    n_terms = int(rng.poisson(mean_terms))
    n_terms = min(max(1, n_terms), model.terms_per_topic)
    tokens = model.draw_terms(profile.query_interest, n_terms, rng)
    qv = build_query_vector([int(t) for t in tokens])
    required = int(rng.integers(1, max_required + 1))
    return qv, required


def dump_corpus(corpus: dict[int, list[Document]], path) -> None:
    """Line format: ``peer_id doc_id term:count ...``"""
    with open(path, "w") as fh:
        for pid in sorted(corpus):
            for doc in corpus[pid]:
                pairs = " ".join(f"{t}:{c}" for t, c in sorted(doc.term_counts.items()))
                fh.write(f"{pid} {doc.doc_id} {pairs}\n")


def load_corpus(path) -> dict[int, list[Document]]:
    corpus: dict[int, list[Document]] = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            pid, doc_id = int(parts[0]), int(parts[1])
            counts = {}
            for pair in parts[2:]:
                t, c = pair.split(":")
                counts[int(t)] = int(c)
            corpus.setdefault(pid, []).append(Document(doc_id, counts))
    return corpus
