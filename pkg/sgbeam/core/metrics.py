"""Prometheus metrics for estimator and search activity.

Metrics live in a dedicated registry so that library users embedding the
miner do not pollute the process-wide default registry. Commands can dump
the registry in the Prometheus text exposition format with ``--metrics-out``.
"""

from pathlib import Path

from prometheus_client import CollectorRegistry, Counter, Histogram, generate_latest

REGISTRY = CollectorRegistry()

SUBSPACE_STATS_COMPUTED = Counter(
    "sgbeam_subspace_stats",
    "Subspaces whose base-score mean and deviation were computed over all records.",
    ["estimator"],
    registry=REGISTRY,
)
SCORE_CACHE_HITS = Counter(
    "sgbeam_score_cache_hits",
    "Subspace statistics served from the score cache.",
    ["estimator"],
    registry=REGISTRY,
)
SCORE_CACHE_MISSES = Counter(
    "sgbeam_score_cache_misses",
    "Subspace statistics lookups that had to be computed.",
    ["estimator"],
    registry=REGISTRY,
)
SEARCH_SECONDS = Histogram(
    "sgbeam_search_seconds",
    "Wall-clock seconds of one beam search (one query).",
    ["estimator"],
    registry=REGISTRY,
    buckets=(0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0, 600.0),
)


def render_metrics() -> bytes:
    """Return the registry in the Prometheus text exposition format."""
    return generate_latest(REGISTRY)


def write_metrics(path: Path) -> None:
    """Write the current metric values to ``path``."""
    path.write_bytes(render_metrics())


def sample_value(name: str, labels: dict[str, str] | None = None) -> float:
    """Return the current value of a sample, or 0.0 if it was never recorded."""
    value = REGISTRY.get_sample_value(name, labels or {})
    return 0.0 if value is None else value
