"""Equal-width grid index and the sGrid / ordinary-grid neighbourhood counts.

Each attribute is cut into equal-width bins whose member records are kept as
packed bit sets. A pseudo-bin is the union of a bin with its two neighbours,
so the smoothed neighbourhood of a point in a k-attribute subspace (up to 3^k
raw bins) is the intersection of k pseudo-bins. Both counts therefore cost k
intersections over ceil(n / w) words.
"""

from __future__ import annotations

import math
import time
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.config import settings
from sgbeam.core.logging import logger
from sgbeam.models.bitset import pack_masks, popcount, word_dtype
from sgbeam.models.grid import AttributeBins, BinGrid, CostMeter
from sgbeam.schemas.miner import BinRule

if TYPE_CHECKING:  # pragma: no cover - types only
    from numpy.typing import ArrayLike, NDArray

    from sgbeam.models.dataset import AttributeStats, Dataset
    from sgbeam.models.subspace import Subspace

SCOTT_FACTOR = 3.49


def fd_bin_width(stats: AttributeStats, n: int) -> float:
    """Return the Freedman-Diaconis width ``2 * IQR * n^(-1/3)``.

    A zero IQR falls back to Scott's width ``3.49 * σ * n^(-1/3)``; a zero σ
    returns 0, meaning the attribute gets a single bin.
    """
    if n < 1:
        msg = f"Bin width needs n >= 1, got {n}."
        raise ValueError(msg)
    if stats.iqr > 0:
        return 2.0 * stats.iqr * n ** (-1.0 / 3.0)
    return scott_bin_width(stats, n)


def scott_bin_width(stats: AttributeStats, n: int) -> float:
    """Return Scott's width ``3.49 * σ * n^(-1/3)`` (0 for a constant attribute)."""
    if stats.stddev <= 0:
        return 0.0
    return SCOTT_FACTOR * stats.stddev * n ** (-1.0 / 3.0)


def sturges_bin_width(stats: AttributeStats, n: int) -> float:
    """Return the width giving Sturges' ``ceil(log2 n) + 1`` bins over the range."""
    if stats.range <= 0:
        return 0.0
    return stats.range / (math.ceil(math.log2(n)) + 1) if n > 1 else stats.range


_RULES = {
    BinRule.FD: fd_bin_width,
    BinRule.SCOTT: scott_bin_width,
    BinRule.STURGES: sturges_bin_width,
}


def bin_width(stats: AttributeStats, n: int, rule: BinRule = BinRule.FD) -> float:
    """Return the bin width chosen by ``rule``."""
    return _RULES[rule](stats, n)


def _bin_count(value_range: float, width: float) -> int:
    if width <= 0 or value_range <= 0:
        return 1
    count = max(1, math.ceil(value_range / width))
    if count > settings.MAX_BINS_PER_ATTRIBUTE:
        logger.warning(
            "Bin count capped",
            requested=count,
            cap=settings.MAX_BINS_PER_ATTRIBUTE,
        )
        count = settings.MAX_BINS_PER_ATTRIBUTE
    return count


def bin_attribute(
    values: ArrayLike, width: float, block_size: int = 64
) -> AttributeBins:
    """Bin one attribute with a given width.

    Bins are half-open ``[origin + i*width, origin + (i+1)*width)`` with the
    maximum folded into the last bin, so every record lands in exactly one bin.

    Args:
        values: The attribute column.
        width: Bin width; ``<= 0`` yields a single bin.
        block_size: Bits per word ``w`` of the bit sets.
    """
    column = np.asarray(values, dtype=np.float64)
    origin = float(column.min())
    count = _bin_count(float(column.max()) - origin, width)
    if count == 1:
        width = max(width, 0.0)
        assignments = np.zeros(len(column), dtype=np.intp)
    else:
        # a capped count widens bins so they still cover the range
        width = max(width, (float(column.max()) - origin) / count)
        raw = np.floor((column - origin) / width)
        assignments = np.clip(raw, 0, count - 1).astype(np.intp)
    masks = assignments[None, :] == np.arange(count)[:, None]
    bins = pack_masks(masks, block_size)
    pseudo = bins.copy()
    pseudo[1:] |= bins[:-1]
    pseudo[:-1] |= bins[1:]
    bins.setflags(write=False)
    pseudo.setflags(write=False)
    assignments.setflags(write=False)
    return AttributeBins(
        bin_count=count,
        bin_width=width,
        origin=origin,
        bins=bins,
        pseudo_bins=pseudo,
        assignments=assignments,
    )


def build_grid(
    ds: Dataset, block_size: int = 64, rule: BinRule = BinRule.FD
) -> BinGrid:
    """Build the bin index of every attribute of ``ds`` (one-time preprocessing).

    Args:
        ds: Non-empty dataset.
        block_size: Bits per word ``w`` (8, 16, 32 or 64).
        rule: Bin-width rule; Freedman-Diaconis by default.
    """
    word_dtype(block_size)  # rejects unsupported w early
    started = time.perf_counter()
    attributes = tuple(
        bin_attribute(ds.column(a), bin_width(ds.stats[a], ds.n, rule), block_size)
        for a in range(ds.d)
    )
    grid = BinGrid(attributes=attributes, length=ds.n, block_size=block_size)
    logger.info(
        "Grid built",
        n=ds.n,
        d=ds.d,
        block_size=block_size,
        bin_rule=str(rule),
        bins=list(grid.bin_counts()),
        seconds=round(time.perf_counter() - started, 6),
    )
    return grid


def _count(
    tables: list[NDArray[np.unsignedinteger]],
    words_per_set: int,
    meter: CostMeter | None,
) -> int:
    acc = tables[0].copy()
    for row in tables[1:]:
        np.bitwise_and(acc, row, out=acc)
    if meter is not None:
        meter.record(len(tables), words_per_set)
    return int(popcount(acc))


def neighborhood_count(
    grid: BinGrid,
    s: Subspace,
    point: ArrayLike,
    meter: CostMeter | None = None,
) -> int:
    """Return |N_s(point)|: records in the bin covering ``point`` or a neighbour.

    Args:
        grid: Bin index of the dataset.
        s: Subspace to estimate in.
        point: Attribute values indexed by attribute id (length ``d``).
        meter: Optional tally of the bit-set work done.
    """
    values = np.asarray(point, dtype=np.float64)
    tables = [
        grid.attributes[z].pseudo_bins[grid.attributes[z].index_of(values[z])]
        for z in s.attrs
    ]
    return _count(tables, grid.words_per_set, meter)


def ordinary_count(
    grid: BinGrid,
    s: Subspace,
    point: ArrayLike,
    meter: CostMeter | None = None,
) -> int:
    """Return the population of the single grid cell covering ``point``."""
    values = np.asarray(point, dtype=np.float64)
    tables = [
        grid.attributes[z].bins[grid.attributes[z].index_of(values[z])]
        for z in s.attrs
    ]
    return _count(tables, grid.words_per_set, meter)


def record_counts(
    grid: BinGrid,
    s: Subspace,
    *,
    smoothed: bool,
    chunk_rows: int | None = None,
) -> NDArray[np.int64]:
    """Return the count at every record of the dataset in subspace ``s``.

    Records sharing a grid cell share a count, so each distinct cell is
    estimated once; cells are processed in batches of ``chunk_rows``.

    Args:
        grid: Bin index of the dataset.
        s: Subspace to estimate in.
        smoothed: True for |N_s| (pseudo-bins), False for the ordinary cell.
        chunk_rows: Cells per vectorised batch.
    """
    chunk = chunk_rows or settings.SCORE_CHUNK_ROWS
    attrs = [grid.attributes[z] for z in s.attrs]
    cells = np.stack([ab.assignments for ab in attrs], axis=1)
    unique, inverse = np.unique(cells, axis=0, return_inverse=True)
    counts = np.empty(len(unique), dtype=np.int64)
    for start in range(0, len(unique), chunk):
        block = unique[start : start + chunk]
        acc = None
        for j, ab in enumerate(attrs):
            table = ab.pseudo_bins if smoothed else ab.bins
            rows = table[block[:, j]]
            acc = rows if acc is None else np.bitwise_and(acc, rows, out=acc)
        counts[start : start + chunk] = popcount(acc, axis=1)
    return counts[inverse.reshape(-1)]
