"""Base density estimators behind the density Z-score.

Each estimator answers two questions for a subspace: the base score of an
arbitrary point, and the base score of every record of the dataset it was
built over. Counts from the grid estimators are returned as floats so all
estimators share one scoring path.
"""

from __future__ import annotations

import time
from typing import TYPE_CHECKING, Protocol

import numpy as np

from sgbeam.core.logging import format_attrs, logger
from sgbeam.schemas.miner import Estimator
from sgbeam.services.grid_index import (
    build_grid,
    neighborhood_count,
    ordinary_count,
    record_counts,
)
from sgbeam.services.kde import bandwidths, kde_density, record_densities

if TYPE_CHECKING:  # pragma: no cover - types only
    from numpy.typing import ArrayLike, NDArray

    from sgbeam.models.dataset import Dataset
    from sgbeam.models.grid import BinGrid, CostMeter
    from sgbeam.models.subspace import Subspace
    from sgbeam.schemas.miner import MinerConfig
    from sgbeam.services.kde import Bandwidths


class DensityEstimator(Protocol):
    """Interface shared by the sGrid, grid and KDE estimators."""

    @property
    def tag(self: DensityEstimator) -> str:
        """Return the estimator name used in cache keys and metrics labels."""
        ...

    def base_score(self: DensityEstimator, s: Subspace, point: ArrayLike) -> float:
        """Return the base score of ``point`` in subspace ``s``."""
        ...

    def base_scores(self: DensityEstimator, s: Subspace) -> NDArray[np.float64]:
        """Return the base score of every record in subspace ``s``."""
        ...

    def attribute_pool(self: DensityEstimator) -> tuple[int, ...]:
        """Return the attribute ids the search may use."""
        ...


class GridEstimator:
    """Bit-set grid counts; smoothed (sGrid) or single-cell (ordinary grid)."""

    def __init__(
        self: GridEstimator,
        grid: BinGrid,
        *,
        smoothed: bool,
        meter: CostMeter | None = None,
    ) -> None:
        """Wrap a built grid.

        Args:
            grid: Bin index of the dataset.
            smoothed: Count the 3^k neighbourhood instead of the single cell.
            meter: Optional tally of bit-set work for point queries.
        """
        self.grid = grid
        self.smoothed = smoothed
        self.meter = meter

    @property
    def tag(self: GridEstimator) -> str:
        """Return ``sgrid`` or ``grid``."""
        return str(Estimator.SGRID if self.smoothed else Estimator.GRID)

    def base_score(self: GridEstimator, s: Subspace, point: ArrayLike) -> float:
        """Return the (smoothed) cell count of ``point``."""
        count = neighborhood_count if self.smoothed else ordinary_count
        return float(count(self.grid, s, point, self.meter))

    def base_scores(self: GridEstimator, s: Subspace) -> NDArray[np.float64]:
        """Return the count of every record."""
        counts = record_counts(self.grid, s, smoothed=self.smoothed)
        return counts.astype(np.float64)

    def attribute_pool(self: GridEstimator) -> tuple[int, ...]:
        """Return every attribute; constant ones score Z = 0 and never win."""
        return tuple(range(self.grid.d))


class KdeEstimator:
    """Gaussian product-kernel densities over constant-free attributes."""

    tag = str(Estimator.KDE)

    def __init__(self: KdeEstimator, ds: Dataset, hs: Bandwidths) -> None:
        """Wrap a dataset and its bandwidths."""
        self.ds = ds
        self.hs = hs

    def base_score(self: KdeEstimator, s: Subspace, point: ArrayLike) -> float:
        """Return the kernel density at ``point``."""
        return kde_density(self.ds, self.hs, s, point)

    def base_scores(self: KdeEstimator, s: Subspace) -> NDArray[np.float64]:
        """Return the kernel density at every record."""
        return record_densities(self.ds, self.hs, s)

    def attribute_pool(self: KdeEstimator) -> tuple[int, ...]:
        """Return the attributes with a valid bandwidth."""
        return self.hs.retained


def build_estimator(
    ds: Dataset, cfg: MinerConfig, meter: CostMeter | None = None
) -> DensityEstimator:
    """Build the estimator selected by ``cfg`` over ``ds``.

    Raises:
        DegenerateBandwidthError: For KDE over fewer than two records.
    """
    started = time.perf_counter()
    estimator: DensityEstimator
    if cfg.estimator == Estimator.KDE:
        estimator = KdeEstimator(ds, bandwidths(ds))
    else:
        grid = build_grid(ds, cfg.block_size, cfg.bin_rule)
        estimator = GridEstimator(
            grid, smoothed=cfg.estimator == Estimator.SGRID, meter=meter
        )
    logger.info(
        "Estimator built",
        estimator=estimator.tag,
        attributes=format_attrs(estimator.attribute_pool()),
        seconds=round(time.perf_counter() - started, 6),
    )
    return estimator
