"""Density Z-scores and the cross-query cache of subspace statistics."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.metrics import (
    SCORE_CACHE_HITS,
    SCORE_CACHE_MISSES,
    SUBSPACE_STATS_COMPUTED,
)
from sgbeam.models.subspace import ScoredSubspace

if TYPE_CHECKING:  # pragma: no cover - types only
    from numpy.typing import ArrayLike

    from sgbeam.models.subspace import Subspace
    from sgbeam.services.estimators import DensityEstimator


@dataclass(frozen=True)
class SubspaceScoreStats:
    """Population mean and deviation of the base scores of all records."""

    mean: float
    stddev: float
    estimator: str


def subspace_stats(base: DensityEstimator, s: Subspace) -> SubspaceScoreStats:
    """Evaluate the base score at every record in ``s`` and summarise it.

    This is the expensive step of scoring: n estimations per call.
    """
    scores = base.base_scores(s)
    SUBSPACE_STATS_COMPUTED.labels(estimator=base.tag).inc()
    return SubspaceScoreStats(
        mean=float(np.mean(scores)),
        stddev=float(np.std(scores)),
        estimator=base.tag,
    )


def z_score(stats: SubspaceScoreStats, base_value: float) -> float:
    """Return ``(base_value - mean) / stddev``, or 0 when the deviation is 0."""
    if stats.stddev == 0:
        return 0.0
    return (base_value - stats.mean) / stats.stddev


class ScoreCache:
    """Subspace statistics keyed by (attribute ids, estimator tag).

    Reads and inserts are serialised by a lock. When two threads compute the
    same key, the first stored value wins and both callers receive it.
    """

    def __init__(self: ScoreCache) -> None:
        """Create an empty cache."""
        self._entries: dict[tuple[tuple[int, ...], str], SubspaceScoreStats] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def get(self: ScoreCache, s: Subspace, tag: str) -> SubspaceScoreStats | None:
        """Return the cached statistics, counting a hit or a miss."""
        with self._lock:
            found = self._entries.get((s.attrs, tag))
            if found is None:
                self.misses += 1
            else:
                self.hits += 1
        counter = SCORE_CACHE_MISSES if found is None else SCORE_CACHE_HITS
        counter.labels(estimator=tag).inc()
        return found

    def put(
        self: ScoreCache, s: Subspace, stats: SubspaceScoreStats
    ) -> SubspaceScoreStats:
        """Insert ``stats`` unless the key exists; return the stored value."""
        with self._lock:
            return self._entries.setdefault((s.attrs, stats.estimator), stats)

    def __len__(self: ScoreCache) -> int:
        """Return the number of cached subspaces."""
        with self._lock:
            return len(self._entries)


class Scorer:
    """Scores query points against one estimator, optionally through a cache."""

    def __init__(
        self: Scorer, estimator: DensityEstimator, cache: ScoreCache | None = None
    ) -> None:
        """Bind an estimator and an optional shared cache."""
        self.estimator = estimator
        self.cache = cache
        self.computations = 0
        self._lock = threading.Lock()

    def stats(self: Scorer, s: Subspace) -> SubspaceScoreStats:
        """Return the statistics of ``s``, computing them on a cache miss."""
        if self.cache is not None:
            cached = self.cache.get(s, self.estimator.tag)
            if cached is not None:
                return cached
        computed = subspace_stats(self.estimator, s)
        with self._lock:
            self.computations += 1
        if self.cache is not None:
            return self.cache.put(s, computed)
        return computed

    def score(self: Scorer, s: Subspace, point: ArrayLike) -> ScoredSubspace:
        """Return the density Z-score of ``point`` in ``s``."""
        value = self.estimator.base_score(s, point)
        return ScoredSubspace(s, z_score(self.stats(s), value))
