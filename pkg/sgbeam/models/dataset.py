"""Column-oriented numeric dataset and per-attribute order statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.exceptions import ConfigError, DataLoadError, EmptyInputError

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Sequence

    from numpy.typing import ArrayLike, NDArray


@dataclass(frozen=True)
class AttributeStats:
    """Order statistics of one attribute.

    Quartiles use the nearest-rank convention with a ceiling on 1-based ranks,
    and ``stddev`` is the population standard deviation.
    """

    min: float
    max: float
    stddev: float
    iqr: float
    q1: float
    q3: float

    @property
    def range(self: AttributeStats) -> float:
        """Return ``max - min``."""
        return self.max - self.min


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable numeric matrix stored one contiguous column per attribute.

    Attributes:
        columns: Array of shape ``(d, n)``; row ``a`` holds attribute ``a``.
        attribute_names: Optional labels, one per attribute.
    """

    columns: NDArray[np.float64]
    attribute_names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self: Dataset) -> None:
        """Validate shape and values, then freeze the backing array."""
        cols = np.array(self.columns, dtype=np.float64, order="C", copy=True)
        if cols.ndim != 2:
            msg = f"Expected a 2-D column matrix, got {cols.ndim} dimension(s)."
            raise ConfigError(msg)
        if cols.shape[0] == 0 or cols.shape[1] == 0:
            msg = "Dataset needs at least one record and one attribute."
            raise EmptyInputError(msg)
        bad = np.argwhere(~np.isfinite(cols))
        if bad.size:
            col, row = (int(v) for v in bad[0])
            msg = f"Non-finite value at row {row}, column {col}."
            raise DataLoadError(msg, row=row, column=col)
        if self.attribute_names is not None and len(self.attribute_names) != len(
            cols
        ):
            msg = (
                f"Got {len(self.attribute_names)} attribute names "
                f"for {len(cols)} attributes."
            )
            raise ConfigError(msg)
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_rows(
        cls: type[Dataset],
        rows: ArrayLike,
        attribute_names: Sequence[str] | None = None,
    ) -> Dataset:
        """Build a dataset from a record-major ``(n, d)`` matrix."""
        matrix = np.asarray(rows, dtype=np.float64)
        if matrix.ndim == 1:
            matrix = matrix.reshape(-1, 1)
        names = tuple(attribute_names) if attribute_names is not None else None
        return cls(columns=matrix.T, attribute_names=names)

    @property
    def n(self: Dataset) -> int:
        """Return the record count."""
        return int(self.columns.shape[1])

    @property
    def d(self: Dataset) -> int:
        """Return the attribute count."""
        return int(self.columns.shape[0])

    def column(self: Dataset, a: int) -> NDArray[np.float64]:
        """Return the read-only values of attribute ``a``."""
        return self.columns[a]

    def row(self: Dataset, i: int) -> NDArray[np.float64]:
        """Return record ``i`` as a vector of ``d`` attribute values."""
        return self.columns[:, i].copy()

    def to_rows(self: Dataset) -> NDArray[np.float64]:
        """Return a record-major ``(n, d)`` copy of the data."""
        return self.columns.T.copy()

    def names(self: Dataset) -> tuple[str, ...]:
        """Return attribute labels, generating ``a0..a{d-1}`` when absent."""
        if self.attribute_names is not None:
            return self.attribute_names
        return tuple(f"a{a}" for a in range(self.d))

    @cached_property
    def stats(self: Dataset) -> tuple[AttributeStats, ...]:
        """Return the order statistics of every attribute (computed once)."""
        return tuple(attribute_stats(self, a) for a in range(self.d))

    @cached_property
    def constant_attributes(self: Dataset) -> tuple[int, ...]:
        """Return the ids of attributes holding a single distinct value."""
        return tuple(a for a, st in enumerate(self.stats) if st.min == st.max)

    def select_rows(self: Dataset, indices: Sequence[int]) -> Dataset:
        """Return a new dataset restricted to ``indices`` (in the given order)."""
        picked = self.columns[:, np.asarray(indices, dtype=np.intp)]
        return Dataset(columns=picked, attribute_names=self.attribute_names)

    def select_attributes(self: Dataset, attrs: Sequence[int]) -> Dataset:
        """Return a new dataset restricted to the attributes ``attrs``."""
        picked = self.columns[np.asarray(attrs, dtype=np.intp)]
        names = (
            tuple(self.attribute_names[a] for a in attrs)
            if self.attribute_names is not None
            else None
        )
        return Dataset(columns=picked, attribute_names=names)


def _nearest_rank(sorted_values: NDArray[np.float64], p: float) -> float:
    """Return the value at 1-based rank ``ceil(p * n)`` of a sorted column."""
    n = len(sorted_values)
    rank = max(1, math.ceil(p * n))
    return float(sorted_values[rank - 1])


def attribute_stats(ds: Dataset, a: int) -> AttributeStats:
    """Compute the order statistics of attribute ``a``.

    Args:
        ds: Dataset to summarise.
        a: Attribute id in ``[0, d)``.

    Returns:
        Min, max, population standard deviation, nearest-rank quartiles and
        their interquartile range.

    Raises:
        ConfigError: If ``a`` is not a valid attribute id.
    """
    if not 0 <= a < ds.d:
        msg = f"Attribute id {a} outside [0, {ds.d})."
        raise ConfigError(msg)
    values = np.sort(ds.column(a))
    q1 = _nearest_rank(values, 0.25)
    q3 = _nearest_rank(values, 0.75)
    return AttributeStats(
        min=float(values[0]),
        max=float(values[-1]),
        stddev=float(np.std(values)),
        iqr=q3 - q1,
        q1=q1,
        q3=q3,
    )
