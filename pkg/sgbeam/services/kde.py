"""Gaussian product-kernel density estimation with a rule-of-thumb bandwidth.

This estimator is the comparison baseline: it evaluates the full sum over
all n records for every estimate, without trees or binning.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.config import settings
from sgbeam.core.exceptions import DegenerateBandwidthError
from sgbeam.core.logging import format_attrs, logger

if TYPE_CHECKING:  # pragma: no cover - types only
    from numpy.typing import ArrayLike, NDArray

    from sgbeam.models.dataset import AttributeStats, Dataset
    from sgbeam.models.subspace import Subspace

BANDWIDTH_FACTOR = 1.06
IQR_TO_SIGMA = 1.34
_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)
_TINY = float(np.finfo(np.float64).tiny)


def bandwidth(stats: AttributeStats, n: int) -> float:
    """Return ``1.06 * min(σ, IQR/1.34) * n^(-1/5)``.

    When ``IQR/1.34`` is zero but σ is not, σ alone is used.

    Raises:
        DegenerateBandwidthError: If ``n < 2`` or the attribute is constant.
    """
    if n < 2:
        msg = f"Kernel bandwidth needs at least two records, got {n}."
        raise DegenerateBandwidthError(msg)
    if stats.stddev <= 0:
        msg = "Constant attribute has no kernel bandwidth."
        raise DegenerateBandwidthError(msg)
    spread = min(stats.stddev, stats.iqr / IQR_TO_SIGMA)
    if spread <= 0:
        spread = stats.stddev
    return BANDWIDTH_FACTOR * spread * n ** (-0.2)


@dataclass(frozen=True, eq=False)
class Bandwidths:
    """Per-attribute bandwidths; excluded (constant) attributes hold NaN."""

    h: NDArray[np.float64]
    excluded: frozenset[int]

    def for_subspace(self: Bandwidths, s: Subspace) -> NDArray[np.float64]:
        """Return the bandwidths of ``s``'s attributes.

        Raises:
            DegenerateBandwidthError: If ``s`` holds an excluded attribute.
        """
        bad = [a for a in s.attrs if a in self.excluded]
        if bad:
            msg = f"Attributes {format_attrs(bad)} have no kernel bandwidth."
            raise DegenerateBandwidthError(msg)
        return self.h[list(s.attrs)]

    @property
    def retained(self: Bandwidths) -> tuple[int, ...]:
        """Return the attribute ids that have a bandwidth."""
        return tuple(a for a in range(len(self.h)) if a not in self.excluded)


def bandwidths(ds: Dataset) -> Bandwidths:
    """Compute the bandwidth of every attribute, excluding constant ones.

    Raises:
        DegenerateBandwidthError: If the dataset has fewer than two records.
    """
    values = np.full(ds.d, np.nan)
    excluded: set[int] = set()
    for a, stats in enumerate(ds.stats):
        if stats.stddev <= 0:
            excluded.add(a)
            continue
        values[a] = bandwidth(stats, ds.n)
    if excluded:
        logger.warning(
            "Constant attributes excluded from kernel estimation",
            attributes=format_attrs(sorted(excluded)),
        )
    values.setflags(write=False)
    return Bandwidths(h=values, excluded=frozenset(excluded))


def _log_normaliser(n: int, h: NDArray[np.float64]) -> float:
    """Return ``log(n * prod(h) * (2π)^(k/2))``."""
    return math.log(n) + float(np.log(h).sum()) + len(h) * _LOG_SQRT_2PI


def kde_density(ds: Dataset, hs: Bandwidths, s: Subspace, q: ArrayLike) -> float:
    """Return the product-kernel density of ``q`` in subspace ``s``.

    The sum over records is taken in log space when the plain sum underflows,
    and the result is floored at the smallest positive double so that the
    estimate stays strictly positive.

    Args:
        ds: Dataset the density is estimated from.
        hs: Bandwidths of ``ds``.
        s: Subspace to estimate in.
        q: Attribute values indexed by attribute id (length ``d``).
    """
    h = hs.for_subspace(s)
    point = np.asarray(q, dtype=np.float64)[list(s.attrs)]
    sq = np.zeros(ds.n)
    for j, a in enumerate(s.attrs):
        sq += ((point[j] - ds.column(a)) / h[j]) ** 2
    exponents = -0.5 * sq
    total = float(np.exp(exponents).sum())
    log_norm = _log_normaliser(ds.n, h)
    if total > 0:
        return max(total / math.exp(log_norm), _TINY)
    peak = float(exponents.max())
    if not math.isfinite(peak):
        return _TINY
    log_total = peak + math.log(float(np.exp(exponents - peak).sum()))
    return max(math.exp(log_total - log_norm), _TINY)


def record_densities(
    ds: Dataset,
    hs: Bandwidths,
    s: Subspace,
    chunk_rows: int | None = None,
) -> NDArray[np.float64]:
    """Return the density at every record of ``ds`` in subspace ``s``.

    Work is done in blocks of ``chunk_rows`` query records against all n
    records, so memory stays at ``chunk_rows * n`` doubles.
    """
    h = hs.for_subspace(s)
    chunk = chunk_rows or settings.KDE_CHUNK_ROWS
    cols = [ds.column(a) for a in s.attrs]
    scale = math.exp(_log_normaliser(ds.n, h))
    out = np.empty(ds.n)
    for start in range(0, ds.n, chunk):
        stop = min(start + chunk, ds.n)
        sq = np.zeros((stop - start, ds.n))
        for j, col in enumerate(cols):
            sq += ((col[start:stop, None] - col[None, :]) / h[j]) ** 2
        # each record's own term contributes exp(0) = 1, so no underflow
        out[start:stop] = np.exp(-0.5 * sq).sum(axis=1) / scale
    return out
