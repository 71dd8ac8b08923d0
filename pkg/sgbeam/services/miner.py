"""Beam search for the subspaces in which a query record is most outlying.

All one- and two-attribute subspaces are scored exhaustively. The W best
two-attribute subspaces form the first beam; each later level extends every
beam member by one attribute, scores subspaces not seen before in this search
and keeps the W best as the next beam. The k best subspaces of any size seen
anywhere form the result. Lower Z-scores are more outlying.
"""

from __future__ import annotations

import bisect
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.exceptions import ConfigError, UnknownQueryError
from sgbeam.core.logging import logger
from sgbeam.core.metrics import SEARCH_SECONDS
from sgbeam.models.subspace import ScoredSubspace, Subspace
from sgbeam.services.estimators import build_estimator
from sgbeam.services.scoring import ScoreCache, Scorer

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray

    from sgbeam.models.dataset import Dataset
    from sgbeam.schemas.miner import MinerConfig
    from sgbeam.services.estimators import DensityEstimator


class _TopList:
    """Bounded list ordered by rank key; the worst entry falls off the end."""

    def __init__(self: _TopList, capacity: int) -> None:
        self.capacity = capacity
        self._keys: list[tuple[float, int, tuple[int, ...]]] = []
        self._items: list[ScoredSubspace] = []

    def offer(self: _TopList, item: ScoredSubspace) -> None:
        key = item.rank_key
        if len(self._items) >= self.capacity and key >= self._keys[-1]:
            return
        i = bisect.bisect_left(self._keys, key)
        self._keys.insert(i, key)
        self._items.insert(i, item)
        if len(self._items) > self.capacity:
            self._keys.pop()
            self._items.pop()

    def items(self: _TopList) -> list[ScoredSubspace]:
        return list(self._items)


@dataclass
class SearchTrace:
    """Audit record of one search.

    Attributes:
        seeds: Every one- and two-attribute subspace, in scoring order.
        expansions: ``(parent, child)`` for each new candidate of level 3+.
        levels: Final beam contents per level, best first.
    """

    seeds: list[ScoredSubspace] = field(default_factory=list)
    expansions: list[tuple[Subspace, ScoredSubspace]] = field(default_factory=list)
    levels: dict[int, list[Subspace]] = field(default_factory=dict)


@dataclass(frozen=True)
class QueryOutcome:
    """Ranked subspaces of one query and how many subspaces it scored."""

    query: int
    subspaces: list[ScoredSubspace]
    visited: frozenset[Subspace]


@dataclass(frozen=True)
class MiningRun:
    """Results of mining several queries with one estimator and cache."""

    outcomes: list[QueryOutcome]
    build_seconds: float
    search_seconds: float
    stats_computed: int
    cache_hits: int = 0
    cache_misses: int = 0
    cache_entries: int = 0

    @property
    def subspaces_scored(self: MiningRun) -> int:
        """Return the number of distinct subspaces scored across all queries."""
        seen: set[Subspace] = set()
        for outcome in self.outcomes:
            seen |= outcome.visited
        return len(seen)

    def results(self: MiningRun) -> dict[int, list[ScoredSubspace]]:
        """Return ranked subspaces per query id."""
        return {o.query: o.subspaces for o in self.outcomes}


def _check_depth(ds: Dataset, cfg: MinerConfig) -> None:
    if cfg.max_depth > ds.d:
        msg = f"Search depth {cfg.max_depth} exceeds the {ds.d} attributes."
        raise ConfigError(msg)


def _as_point(ds: Dataset, q: ArrayLike) -> NDArray[np.float64]:
    point = np.asarray(q, dtype=np.float64)
    if point.shape != (ds.d,):
        msg = f"Query needs {ds.d} attribute values, got shape {point.shape}."
        raise ConfigError(msg)
    return point


class _BeamRun:
    """State of one search: the result list and the visited subspaces."""

    def __init__(
        self: _BeamRun,
        scorer: Scorer,
        point: NDArray[np.float64],
        cfg: MinerConfig,
        trace: SearchTrace | None,
    ) -> None:
        self.scorer = scorer
        self.point = point
        self.cfg = cfg
        self.trace = trace
        self.pool = scorer.estimator.attribute_pool()
        self.best = _TopList(cfg.top_k)
        self.visited: set[Subspace] = set()

    def visit(self: _BeamRun, s: Subspace) -> ScoredSubspace:
        self.visited.add(s)
        scored = self.scorer.score(s, self.point)
        self.best.offer(scored)
        return scored

    def seed(self: _BeamRun) -> list[Subspace]:
        seeds = [Subspace((a,)) for a in self.pool]
        seeds += [Subspace(pair) for pair in itertools.combinations(self.pool, 2)]
        beam = _TopList(self.cfg.beam_width)
        for s in seeds:
            scored = self.visit(s)
            if s.k == 2:
                beam.offer(scored)
            if self.trace is not None:
                self.trace.seeds.append(scored)
        return [item.subspace for item in beam.items()]

    def expand(self: _BeamRun, level: list[Subspace]) -> list[Subspace]:
        beam = _TopList(self.cfg.beam_width)
        for parent in level:
            for a in self.pool:
                child = None if a in parent.attrs else parent.with_attribute(a)
                if child is None or child in self.visited:
                    continue
                scored = self.visit(child)
                beam.offer(scored)
                if self.trace is not None:
                    self.trace.expansions.append((parent, scored))
        return [item.subspace for item in beam.items()]

    def run(self: _BeamRun) -> list[ScoredSubspace]:
        level = self.seed()
        if self.trace is not None:
            self.trace.levels[2] = level
        for depth in range(3, self.cfg.max_depth + 1):
            if not level:
                break
            level = self.expand(level)
            if self.trace is not None:
                self.trace.levels[depth] = level
        results = self.best.items()
        if self.cfg.tau is not None:
            results = [item for item in results if item.z < self.cfg.tau]
        return results


def beam_search(
    ds: Dataset,
    q: ArrayLike,
    cfg: MinerConfig,
    cache: ScoreCache | None = None,
    *,
    estimator: DensityEstimator | None = None,
    trace: SearchTrace | None = None,
) -> list[ScoredSubspace]:
    """Return the top-k subspaces of query point ``q``, most outlying first.

    Args:
        ds: Dataset the statistics are taken over.
        q: Attribute values of the query (length ``d``).
        cfg: Search configuration.
        cache: Subspace statistics shared across calls; ignored when
            ``cfg.use_cache`` is off.
        estimator: Prebuilt estimator over ``ds``; built from ``cfg`` if absent.
        trace: Filled with the search's audit record when given.

    Raises:
        ConfigError: If the depth exceeds ``d`` or ``q`` has the wrong length.
    """
    _check_depth(ds, cfg)
    point = _as_point(ds, q)
    if estimator is None:
        estimator = build_estimator(ds, cfg)
    scorer = Scorer(estimator, cache if cfg.use_cache else None)
    started = time.perf_counter()
    search = _BeamRun(scorer, point, cfg, trace)
    results = search.run()
    SEARCH_SECONDS.labels(estimator=estimator.tag).observe(
        time.perf_counter() - started
    )
    logger.debug(
        "Beam search finished",
        estimator=estimator.tag,
        visited=len(search.visited),
        returned=len(results),
    )
    return results


def mine_queries(
    ds: Dataset,
    queries: Sequence[int],
    cfg: MinerConfig,
    *,
    jobs: int = 1,
    cache: ScoreCache | None = None,
    estimator: DensityEstimator | None = None,
) -> MiningRun:
    """Mine every query record with one estimator and one shared cache.

    Args:
        ds: Dataset; queries are record ids into it.
        queries: Record ids, mined in the given order (duplicates allowed).
        cfg: Search configuration.
        jobs: Worker threads; results do not depend on it.
        cache: Cache to share; a fresh one is used when absent.
        estimator: Prebuilt estimator; its build time is then reported as 0.

    Raises:
        UnknownQueryError: If a record id lies outside ``[0, n)``.
        ConfigError: If the depth exceeds ``d`` or ``jobs < 1``.
    """
    _check_depth(ds, cfg)
    if jobs < 1:
        msg = f"Worker count must be at least 1, got {jobs}."
        raise ConfigError(msg)
    for query in queries:
        if not 0 <= query < ds.n:
            msg = f"Query record {query} is outside [0, {ds.n})."
            raise UnknownQueryError(msg, query=query)

    build_seconds = 0.0
    if estimator is None:
        started = time.perf_counter()
        estimator = build_estimator(ds, cfg)
        build_seconds = time.perf_counter() - started
    tag = estimator.tag
    if cfg.use_cache and cache is None:
        cache = ScoreCache()
    scorer = Scorer(estimator, cache if cfg.use_cache else None)

    def run_one(query: int) -> QueryOutcome:
        started = time.perf_counter()
        search = _BeamRun(scorer, ds.row(query), cfg, None)
        results = search.run()
        visited = frozenset(search.visited)
        elapsed = time.perf_counter() - started
        SEARCH_SECONDS.labels(estimator=tag).observe(elapsed)
        logger.info(
            "Search finished",
            query=query,
            estimator=tag,
            subspaces_scored=len(visited),
            returned=len(results),
            seconds=round(elapsed, 6),
        )
        return QueryOutcome(query=query, subspaces=results, visited=visited)

    started = time.perf_counter()
    if jobs == 1:
        outcomes = [run_one(query) for query in queries]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_one, queries))
    search_seconds = time.perf_counter() - started

    run = MiningRun(
        outcomes=outcomes,
        build_seconds=build_seconds,
        search_seconds=search_seconds,
        stats_computed=scorer.computations,
        cache_hits=scorer.cache.hits if scorer.cache is not None else 0,
        cache_misses=scorer.cache.misses if scorer.cache is not None else 0,
        cache_entries=len(scorer.cache) if scorer.cache is not None else 0,
    )
    logger.info(
        "Cache statistics",
        estimator=tag,
        hits=run.cache_hits,
        misses=run.cache_misses,
        entries=run.cache_entries,
        stats_computed=run.stats_computed,
    )
    return run
