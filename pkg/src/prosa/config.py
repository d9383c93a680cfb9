"""Experiment configuration and the plain key=value config-file format."""

from __future__ import annotations

from dataclasses import dataclass, fields

STRATEGIES = ("prosa", "flood", "randomwalk")


@dataclass
class ExperimentConfig:
    n_peers: int = 400
    docs_mean: float = 20.0
    n_queries: int = 10_000
    strategy: str = "prosa"
    seed: int = 1
    theta_match: float = 1.0
    theta_flood: float = 0.3
    ttl: int = 15
    flood_ttl: int = 7
    join_links: int = 4
    # topic model
    n_topics: int = 10
    terms_per_topic: int = 200
    overlap_fraction: float = 0.1
    zipf_exponent: float = 0.5
    noise_fraction: float = 0.0
    doc_terms_mean: float = 10.0
    query_terms_mean: float = 4.0
    max_required: int = 5
    home_topic_bias: float = 0.95
    # engine behaviour
    ingest_downloads: bool = True
    partial_fallback_forward: bool = False
    pl_capacity: int = 0  # 0 = unbounded
    snapshot_interval: int = 0  # 0 = final snapshot only
    cc_exclude_low_degree: bool = False

    def validate(self) -> None:
        if self.n_peers < 2:
            raise ValueError("n_peers must be >= 2")
        if self.n_queries < 1:
            raise ValueError("n_queries must be >= 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.theta_match < 0 or self.theta_flood < 0:
            raise ValueError("thresholds must be >= 0")
        if self.ttl < 1 or self.flood_ttl < 1:
            raise ValueError("ttl must be >= 1")
        if self.join_links < 1:
            raise ValueError("join_links must be >= 1")
        if self.n_topics < 1 or self.terms_per_topic < 1:
            raise ValueError("topic model must have >= 1 topic and term")
        if not 0.0 <= self.overlap_fraction < 1.0:
            raise ValueError("overlap_fraction must be in [0, 1)")
        if self.docs_mean <= 0 or self.doc_terms_mean <= 0 or self.query_terms_mean <= 0:
            raise ValueError("means must be positive")
        if self.max_required < 1:
            raise ValueError("max_required must be >= 1")


def _coerce(current, raw: str):
    if isinstance(current, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return type(current)(raw)


def load_config_file(path, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Parse ``key = value`` lines ('#' comments allowed) over the defaults."""
    cfg = base or ExperimentConfig()
    known = {f.name for f in fields(ExperimentConfig)}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, raw = (s.strip() for s in line.split("=", 1))
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            setattr(cfg, key, _coerce(getattr(cfg, key), raw))
    return cfg
