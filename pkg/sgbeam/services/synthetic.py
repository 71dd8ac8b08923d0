"""Synthetic datasets with outliers planted in known attribute groups.

Attributes are split into consecutive groups of the requested sizes; the
remaining attributes are uniform noise on [0, 1]. Inside a group, inliers
come from Gaussian clusters truncated at 3 standard deviations. Cluster
centres take their coordinates from ``linspace(0.2, 0.8, c)``, permuted
independently per attribute, so every cluster shows up as a separate peak in
each single attribute.

An outlier copies, per attribute of a chosen group, the coordinate of some
cluster, but never the same cluster on every attribute. It therefore looks
normal in each attribute on its own and sits in an empty region of the
group's joint subspace.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sgbeam.core.exceptions import ConfigError
from sgbeam.core.logging import logger
from sgbeam.models.dataset import Dataset
from sgbeam.models.ground_truth import GroundTruth
from sgbeam.models.subspace import Subspace

if TYPE_CHECKING:  # pragma: no cover - types only
    from sgbeam.schemas.synthetic import SyntheticSpec

INLIER_RADIUS = 3.0
CENTRE_LOW = 0.2
CENTRE_HIGH = 0.8


@dataclass(frozen=True)
class SyntheticLayout:
    """Planted structure of a generated dataset.

    Attributes:
        groups: Attribute ids of every planted group.
        centres: Per group, a ``(clusters, group size)`` array of centres.
        cluster_std: Per-coordinate standard deviation of every cluster.
    """

    groups: tuple[Subspace, ...]
    centres: tuple[np.ndarray, ...]
    cluster_std: float


def _check_feasible(spec: SyntheticSpec) -> None:
    if sum(spec.group_sizes) > spec.d:
        msg = (
            f"Groups of sizes {spec.group_sizes} need {sum(spec.group_sizes)} "
            f"attributes but only {spec.d} exist."
        )
        raise ConfigError(msg)
    if spec.outlier_count > spec.n:
        msg = f"Cannot plant {spec.outlier_count} outliers in {spec.n} records."
        raise ConfigError(msg)
    step = (CENTRE_HIGH - CENTRE_LOW) / (spec.clusters_per_group - 1)
    if step < spec.outlier_margin * spec.cluster_std:
        msg = (
            f"Clusters {step:.4f} apart cannot keep outliers "
            f"{spec.outlier_margin} deviations ({spec.cluster_std}) away."
        )
        raise ConfigError(msg)


def _truncated_offsets(
    rng: np.random.Generator, count: int, dims: int, std: float
) -> np.ndarray:
    """Draw Gaussian offsets whose Euclidean norm is below 3 deviations."""
    out = rng.standard_normal((count, dims))
    outside = np.linalg.norm(out, axis=1) >= INLIER_RADIUS
    while outside.any():
        out[outside] = rng.standard_normal((int(outside.sum()), dims))
        outside = np.linalg.norm(out, axis=1) >= INLIER_RADIUS
    return out * std


def _empty_cell(rng: np.random.Generator, centres: np.ndarray) -> np.ndarray:
    """Pick per-attribute cluster coordinates not all taken from one cluster."""
    clusters, dims = centres.shape
    while True:
        picks = rng.integers(0, clusters, size=dims)
        if len(set(picks.tolist())) > 1:
            return centres[picks, np.arange(dims)]


def generate_with_layout(
    spec: SyntheticSpec,
) -> tuple[Dataset, GroundTruth, SyntheticLayout]:
    """Generate a dataset, its ground truth and the planted layout.

    Raises:
        ConfigError: If the groups do not fit into ``d``, the outliers do not
            fit into ``n`` or the clusters are too close for the margin.
    """
    _check_feasible(spec)
    rng = np.random.default_rng(spec.seed)
    data = rng.uniform(0.0, 1.0, size=(spec.n, spec.d))

    offsets = itertools.accumulate(spec.group_sizes, initial=0)
    groups = tuple(
        Subspace(tuple(range(start, start + size)))
        for start, size in zip(offsets, spec.group_sizes, strict=False)
    )
    positions = np.linspace(CENTRE_LOW, CENTRE_HIGH, spec.clusters_per_group)
    centres = []
    for group in groups:
        cols = list(group.attrs)
        centre = np.stack([rng.permutation(positions) for _ in cols], axis=1)
        membership = rng.integers(0, spec.clusters_per_group, size=spec.n)
        data[:, cols] = centre[membership] + _truncated_offsets(
            rng, spec.n, group.k, spec.cluster_std
        )
        centres.append(centre)

    picked = rng.choice(spec.n, size=spec.outlier_count, replace=False)
    outlier_rows = np.sort(picked)
    truth: dict[int, tuple[Subspace, ...]] = {}
    per_outlier = min(spec.max_groups_per_outlier, len(groups))
    for row in outlier_rows.tolist():
        count = int(rng.integers(1, per_outlier + 1))
        chosen = np.sort(rng.choice(len(groups), size=count, replace=False))
        for g in chosen.tolist():
            data[row, list(groups[g].attrs)] = _empty_cell(rng, centres[g])
        truth[row] = tuple(groups[g] for g in chosen.tolist())

    ds = Dataset.from_rows(data)
    layout = SyntheticLayout(
        groups=groups, centres=tuple(centres), cluster_std=spec.cluster_std
    )
    logger.info(
        "Synthetic dataset generated",
        n=spec.n,
        d=spec.d,
        groups=[str(g) for g in groups],
        outliers=len(truth),
        seed=spec.seed,
    )
    return ds, GroundTruth(outliers=truth), layout


def generate(spec: SyntheticSpec) -> tuple[Dataset, GroundTruth]:
    """Generate a dataset with planted outliers; a pure function of ``spec``."""
    ds, gt, _ = generate_with_layout(spec)
    return ds, gt


def centre_distances(
    layout: SyntheticLayout, ds: Dataset, record: int, group: int
) -> np.ndarray:
    """Return a record's distance to each centre of a group, in deviations."""
    attrs = list(layout.groups[group].attrs)
    point = ds.row(record)[attrs]
    return np.linalg.norm(layout.centres[group] - point, axis=1) / layout.cluster_std
