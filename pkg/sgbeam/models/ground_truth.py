"""Planted outlier ground truth for synthetic datasets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover - types only
    from sgbeam.models.subspace import Subspace


@dataclass(frozen=True)
class GroundTruth:
    """Outlying subspaces per outlier record id."""

    outliers: dict[int, tuple[Subspace, ...]] = field(default_factory=dict)

    @property
    def record_ids(self: GroundTruth) -> list[int]:
        """Return outlier record ids in ascending order."""
        return sorted(self.outliers)

    def subspaces_for(self: GroundTruth, record_id: int) -> tuple[Subspace, ...]:
        """Return the true outlying subspaces of ``record_id``."""
        return self.outliers[record_id]

    def __contains__(self: GroundTruth, record_id: object) -> bool:
        """Return True if ``record_id`` is a planted outlier."""
        return record_id in self.outliers

    def __len__(self: GroundTruth) -> int:
        """Return the number of outliers."""
        return len(self.outliers)
