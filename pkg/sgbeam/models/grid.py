"""Equal-width bin index with bit-set membership and pseudo-bins."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from sgbeam.models.bitset import BitSetVector


@dataclass(frozen=True, eq=False)
class AttributeBins:
    """Bins of one attribute.

    Attributes:
        bin_count: Number of bins ``b_z`` (at least 1).
        bin_width: Width of every bin; 0 for a single-bin attribute.
        origin: Left edge of bin 0 (the attribute minimum).
        bins: Packed member sets, shape ``(b_z, ceil(n / w))``.
        pseudo_bins: Union of each bin with its direct neighbours, same shape.
        assignments: Bin index of every record, shape ``(n,)``.
    """

    bin_count: int
    bin_width: float
    origin: float
    bins: NDArray[np.unsignedinteger]
    pseudo_bins: NDArray[np.unsignedinteger]
    assignments: NDArray[np.intp]

    @property
    def length(self: AttributeBins) -> int:
        """Return the record count ``n``."""
        return len(self.assignments)

    def bin(self: AttributeBins, i: int) -> BitSetVector:
        """Return raw bin ``i`` as a bit set."""
        return BitSetVector(self.bins[i], self.length)

    def pseudo_bin(self: AttributeBins, i: int) -> BitSetVector:
        """Return pseudo-bin ``i`` (bins ``i-1``, ``i``, ``i+1``) as a bit set."""
        return BitSetVector(self.pseudo_bins[i], self.length)

    def index_of(self: AttributeBins, value: float) -> int:
        """Return the bin covering ``value``, clamping outside values to an edge."""
        if self.bin_width <= 0:
            return 0
        raw = np.floor((value - self.origin) / self.bin_width)
        return int(np.clip(raw, 0, self.bin_count - 1))

    def indices_of(
        self: AttributeBins, values: NDArray[np.float64]
    ) -> NDArray[np.intp]:
        """Vectorised :meth:`index_of`."""
        if self.bin_width <= 0:
            return np.zeros(len(values), dtype=np.intp)
        raw = np.floor((np.asarray(values) - self.origin) / self.bin_width)
        return np.clip(raw, 0, self.bin_count - 1).astype(np.intp)


@dataclass(frozen=True, eq=False)
class BinGrid:
    """Per-attribute bin index over one dataset; immutable after build."""

    attributes: tuple[AttributeBins, ...]
    length: int
    block_size: int

    @property
    def d(self: BinGrid) -> int:
        """Return the attribute count."""
        return len(self.attributes)

    @property
    def words_per_set(self: BinGrid) -> int:
        """Return ``ceil(n / w)``, the words in each bit set."""
        return -(-self.length // self.block_size)

    def bin_counts(self: BinGrid) -> tuple[int, ...]:
        """Return ``b_z`` for every attribute."""
        return tuple(ab.bin_count for ab in self.attributes)


@dataclass
class CostMeter:
    """Tally of bit-set work performed by count queries."""

    intersections: int = 0
    words: int = 0
    estimations: int = 0

    def record(self: CostMeter, sets: int, words_per_set: int) -> None:
        """Add one estimation touching ``sets`` bit sets of ``words_per_set`` words."""
        self.estimations += 1
        self.intersections += sets
        self.words += sets * words_per_set
