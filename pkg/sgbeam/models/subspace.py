"""Subspaces (attribute subsets) and their scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Iterable


@dataclass(frozen=True)
class Subspace:
    """Canonical, strictly increasing tuple of attribute ids.

    Two subspaces are equal exactly when they hold the same attributes, so an
    instance doubles as the identity key of the attribute set.
    """

    attrs: tuple[int, ...]

    def __post_init__(self: Subspace) -> None:
        """Reject empty, negative, unsorted or duplicated attribute ids."""
        if not self.attrs:
            msg = "A subspace needs at least one attribute."
            raise ValueError(msg)
        if self.attrs[0] < 0:
            msg = f"Attribute ids must be non-negative, got {self.attrs[0]}."
            raise ValueError(msg)
        if any(a >= b for a, b in zip(self.attrs, self.attrs[1:], strict=False)):
            msg = f"Attribute ids must be strictly increasing, got {self.attrs}."
            raise ValueError(msg)

    @classmethod
    def of(cls: type[Subspace], attrs: Iterable[int]) -> Subspace:
        """Build the canonical subspace from attribute ids in any order.

        Raises:
            ValueError: If ``attrs`` is empty or repeats an attribute.
        """
        items = [int(a) for a in attrs]
        ordered = tuple(sorted(set(items)))
        if len(ordered) != len(items):
            msg = f"Duplicate attribute ids in {items}."
            raise ValueError(msg)
        return cls(ordered)

    @property
    def k(self: Subspace) -> int:
        """Return the number of attributes."""
        return len(self.attrs)

    def with_attribute(self: Subspace, a: int) -> Subspace:
        """Return this subspace extended by attribute ``a``."""
        return Subspace.of((*self.attrs, a))

    def is_strict_subset_of(self: Subspace, other: Subspace) -> bool:
        """Return True if every attribute is in ``other`` and ``other`` is larger."""
        return self.k < other.k and set(self.attrs) <= set(other.attrs)

    def is_strict_superset_of(self: Subspace, other: Subspace) -> bool:
        """Return True if ``other`` is a strict subset of this subspace."""
        return other.is_strict_subset_of(self)

    def __str__(self: Subspace) -> str:
        """Render as ``{0,1}``."""
        return "{" + ",".join(str(a) for a in self.attrs) + "}"


@dataclass(frozen=True)
class ScoredSubspace:
    """A subspace with the density Z-score of a query in it."""

    subspace: Subspace
    z: float

    @property
    def rank_key(self: ScoredSubspace) -> tuple[float, int, tuple[int, ...]]:
        """Return the ordering key: ascending z, then size, then attribute ids."""
        return (self.z, self.subspace.k, self.subspace.attrs)
