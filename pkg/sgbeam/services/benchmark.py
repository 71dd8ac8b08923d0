"""Timed estimator comparisons over identical query sets."""

from __future__ import annotations

import time
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.exceptions import ConfigError
from sgbeam.core.logging import logger
from sgbeam.schemas.synthetic import BenchRow
from sgbeam.services.estimators import build_estimator
from sgbeam.services.miner import mine_queries

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Sequence

    from sgbeam.models.dataset import Dataset
    from sgbeam.schemas.miner import MinerConfig


def _check_comparable(configs: Sequence[MinerConfig]) -> None:
    """Require configurations that differ in their estimator only."""
    if not configs:
        msg = "At least one configuration is needed."
        raise ConfigError(msg)
    reference = configs[0].model_dump(exclude={"estimator"})
    for cfg in configs[1:]:
        if cfg.model_dump(exclude={"estimator"}) != reference:
            msg = "Benchmark configurations may differ in the estimator only."
            raise ConfigError(msg)


def bench_estimators(
    ds: Dataset,
    queries: Sequence[int],
    configs: Sequence[MinerConfig],
    *,
    repeat: int = 1,
    jobs: int = 1,
) -> list[BenchRow]:
    """Time index build and mining for each configuration.

    Configurations run one after another, ``repeat`` times each, with a fresh
    estimator and cache per run. Build time is measured separately from the
    search.

    Raises:
        ConfigError: If the configurations differ in more than the estimator
            or ``repeat`` is below 1.
    """
    _check_comparable(configs)
    if repeat < 1:
        msg = f"Repeat count must be at least 1, got {repeat}."
        raise ConfigError(msg)
    rows: list[BenchRow] = []
    for cfg in configs:
        timings: list[float] = []
        for _ in range(repeat):
            started = time.perf_counter()
            estimator = build_estimator(ds, cfg)
            build_ms = (time.perf_counter() - started) * 1000.0
            run = mine_queries(ds, queries, cfg, jobs=jobs, estimator=estimator)
            search_ms = run.search_seconds * 1000.0
            timings.append(search_ms)
            rows.append(
                BenchRow(
                    estimator=str(cfg.estimator),
                    n=ds.n,
                    d=ds.d,
                    depth=cfg.max_depth,
                    queries=len(queries),
                    build_ms=build_ms,
                    search_ms=search_ms,
                    subspaces_scored=run.subspaces_scored,
                )
            )
        if repeat > 1:
            logger.info(
                "bench.summary",
                estimator=str(cfg.estimator),
                n=ds.n,
                d=ds.d,
                repeat=repeat,
                search_ms_mean=float(np.mean(timings)),
                search_ms_stdev=float(np.std(timings)),
            )
    return rows


def spread_queries(n: int, count: int) -> list[int]:
    """Return ``count`` evenly spaced record ids of ``[0, n)`` (at most ``n``)."""
    count = min(count, n)
    if count <= 0:
        return []
    return sorted({int(i) for i in np.linspace(0, n - 1, count).round()})


def subsample(
    ds: Dataset, fraction: float, keep: Sequence[int], seed: int = 0
) -> tuple[Dataset, list[int]]:
    """Return a row subsample holding ``fraction`` of ``ds`` and every kept row.

    Rows stay in their original order; the kept rows are returned remapped to
    their positions in the subsample.

    Raises:
        ConfigError: If ``fraction`` is outside ``(0, 1]``.
    """
    if not 0 < fraction <= 1:
        msg = f"Fraction must lie in (0, 1], got {fraction}."
        raise ConfigError(msg)
    kept = sorted(set(keep))
    target = max(len(kept), round(fraction * ds.n))
    others = np.setdiff1d(np.arange(ds.n), kept)
    rng = np.random.default_rng(seed)
    extra = rng.choice(others, size=target - len(kept), replace=False)
    rows = np.sort(np.concatenate([np.asarray(kept, dtype=np.intp), extra]))
    position = {int(r): i for i, r in enumerate(rows)}
    return ds.select_rows(rows.tolist()), [position[q] for q in keep]


def sweep(
    ds: Dataset,
    queries: Sequence[int],
    configs: Sequence[MinerConfig],
    *,
    fractions: Sequence[float] = (1.0,),
    dims: Sequence[int] | None = None,
    repeat: int = 1,
    seed: int = 0,
    jobs: int = 1,
) -> list[BenchRow]:
    """Benchmark over row fractions and leading-attribute prefixes.

    Each fraction subsamples the rows (query rows always kept); each entry of
    ``dims`` keeps the first that many attributes.
    """
    rows: list[BenchRow] = []
    for fraction in fractions:
        part, part_queries = (
            (ds, list(queries))
            if fraction == 1
            else subsample(ds, fraction, queries, seed)
        )
        for width in dims or (part.d,):
            if not 1 <= width <= part.d:
                msg = f"Dimension prefix {width} is outside [1, {part.d}]."
                raise ConfigError(msg)
            view = part if width == part.d else part.select_attributes(range(width))
            rows += bench_estimators(
                view, part_queries, configs, repeat=repeat, jobs=jobs
            )
    return rows
