"""Shared test helpers used across the suite.

This module provides:
- Random dataset builders with ties and constant columns on demand.
- Brute-force oracles for grid counts, kernel densities, score statistics
  and exhaustive subspace ranking.

Public helpers:
- ``random_dataset(rng, n, d)``: dataset with mixed distributions and ties.
- ``oracle_assignments(column, width)``: bin index of every value, by hand.
- ``OracleGrid(ds)``: grid counts summed from raw cells by hand.
- ``naive_kde(ds, h, s, q)``: product-kernel density by double loop.
- ``two_pass_stats(values)``: population mean and deviation in pure Python.
- ``exhaustive_ranking(ds, point, cfg)``: every subspace up to the depth,
  scored and sorted by the miner's ordering.
"""

import itertools
import math
from collections import Counter
from collections.abc import Sequence

import numpy as np

from sgbeam.models.dataset import Dataset
from sgbeam.models.subspace import ScoredSubspace, Subspace
from sgbeam.schemas.miner import BinRule, MinerConfig
from sgbeam.services.estimators import DensityEstimator, build_estimator
from sgbeam.services.grid_index import bin_width
from sgbeam.services.scoring import Scorer


def random_dataset(
    rng: np.random.Generator, n: int, d: int, *, constant: int | None = None
) -> Dataset:
    """Build an ``n x d`` dataset mixing normal, uniform and rounded columns.

    Rounded columns create ties so quartiles and bin edges are exercised.
    ``constant`` names an attribute forced to a single value.
    """
    cols = []
    for a in range(d):
        kind = a % 3
        if kind == 0:
            col = rng.normal(0.0, 1.0, size=n)
        elif kind == 1:
            col = rng.uniform(-5.0, 5.0, size=n)
        else:
            col = np.round(rng.normal(10.0, 3.0, size=n))
        cols.append(col)
    if constant is not None:
        cols[constant] = np.full(n, 7.5)
    return Dataset(columns=np.stack(cols))


def _oracle_index(origin: float, span: float, width: float, value: float) -> int:
    if width <= 0 or span <= 0:
        return 0
    count = max(1, math.ceil(span / width))
    return min(max(math.floor((value - origin) / width), 0), count - 1)


def oracle_assignments(column: Sequence[float], width: float) -> list[int]:
    """Assign each value to ``min(floor((v - min) / width), b - 1)`` by hand."""
    values = [float(v) for v in column]
    origin = min(values)
    span = max(values) - origin
    return [_oracle_index(origin, span, width, v) for v in values]


class OracleGrid:
    """Bin assignments of every attribute computed in pure Python.

    Counts are sums of raw-cell populations over every combination of
    ``{i-1, i, i+1}`` per attribute (``{i}`` for the ordinary grid),
    deduplicated so clamped edges are not counted twice.
    """

    def __init__(self: "OracleGrid", ds: Dataset, rule: BinRule = BinRule.FD) -> None:
        self.widths = [bin_width(ds.stats[a], ds.n, rule) for a in range(ds.d)]
        columns = [[float(v) for v in ds.column(a)] for a in range(ds.d)]
        self.origins = [min(col) for col in columns]
        self.spans = [max(col) - min(col) for col in columns]
        self.assignments = [
            oracle_assignments(col, w)
            for col, w in zip(columns, self.widths, strict=True)
        ]

    def index(self: "OracleGrid", a: int, value: float) -> int:
        return _oracle_index(self.origins[a], self.spans[a], self.widths[a], value)

    def cells(self: "OracleGrid", s: Subspace) -> Counter[tuple[int, ...]]:
        return Counter(zip(*(self.assignments[a] for a in s.attrs), strict=True))

    def neighbours(
        self: "OracleGrid", centre: Sequence[int], *, smoothed: bool = True
    ) -> set[tuple[int, ...]]:
        steps = (-1, 0, 1) if smoothed else (0,)
        return {
            tuple(c + o for c, o in zip(centre, offsets, strict=True))
            for offsets in itertools.product(steps, repeat=len(centre))
        }

    def count_cell(
        self: "OracleGrid",
        cells: Counter[tuple[int, ...]],
        centre: Sequence[int],
        *,
        smoothed: bool = True,
    ) -> int:
        neighbours = self.neighbours(centre, smoothed=smoothed)
        return sum(cells.get(c, 0) for c in neighbours)

    def count(
        self: "OracleGrid",
        s: Subspace,
        point: Sequence[float],
        *,
        smoothed: bool = True,
    ) -> int:
        centre = [self.index(a, point[a]) for a in s.attrs]
        return self.count_cell(self.cells(s), centre, smoothed=smoothed)


def naive_kde(
    ds: Dataset, h: Sequence[float], s: Subspace, q: Sequence[float]
) -> float:
    """Evaluate the Gaussian product-kernel density with explicit loops."""
    total = 0.0
    for i in range(ds.n):
        product = 1.0
        for a, ha in zip(s.attrs, h, strict=True):
            u = (q[a] - float(ds.columns[a, i])) / ha
            product *= math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi)
        total += product
    norm = ds.n
    for ha in h:
        norm *= ha
    return total / norm


def two_pass_stats(values: Sequence[float]) -> tuple[float, float]:
    """Return the population mean and standard deviation in two passes."""
    items = [float(v) for v in values]
    mean = sum(items) / len(items)
    var = sum((v - mean) ** 2 for v in items) / len(items)
    return mean, math.sqrt(var)


def exhaustive_ranking(
    ds: Dataset,
    point: Sequence[float],
    cfg: MinerConfig,
    estimator: DensityEstimator | None = None,
) -> list[ScoredSubspace]:
    """Score every subspace of up to ``cfg.max_depth`` attributes and sort them."""
    est = estimator or build_estimator(ds, cfg)
    scorer = Scorer(est)
    pool = est.attribute_pool()
    scored = [
        scorer.score(Subspace(attrs), point)
        for k in range(1, cfg.max_depth + 1)
        for attrs in itertools.combinations(pool, k)
    ]
    return sorted(scored, key=lambda item: item.rank_key)
