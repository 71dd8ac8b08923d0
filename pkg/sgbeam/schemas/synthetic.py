"""Schemas for synthetic data specs, match reports and benchmark rows."""

from __future__ import annotations

from typing import ClassVar

from pydantic import BaseModel, Field, field_validator

MIN_GROUP_SIZE = 2
MAX_GROUP_SIZE = 5


class SyntheticSpec(BaseModel):
    """Shape of a synthetic dataset with planted subspace outliers.

    Cross-field feasibility (groups fitting into ``d``, outliers into ``n``)
    is checked by the generator, which raises ``ConfigError``.
    """

    n: int = Field(ge=1)
    d: int = Field(ge=1)
    group_sizes: list[int] = Field(min_length=1)
    outlier_count: int = Field(ge=0)
    seed: int = Field(default=0, ge=0)
    clusters_per_group: int = Field(default=3, ge=2)
    cluster_std: float = Field(default=0.04, gt=0)
    outlier_margin: float = Field(default=4.0, ge=3.0)
    max_groups_per_outlier: int = Field(default=2, ge=1)

    @field_validator("group_sizes")
    @classmethod
    def group_sizes_in_range(cls: type[SyntheticSpec], v: list[int]) -> list[int]:
        """Validate that every planted group spans 2 to 5 attributes."""
        for size in v:
            if not MIN_GROUP_SIZE <= size <= MAX_GROUP_SIZE:
                msg = (
                    f"Group sizes must lie in [{MIN_GROUP_SIZE}, {MAX_GROUP_SIZE}], "
                    f"got {size}."
                )
                raise ValueError(msg)
        return v


class QueryMatch(BaseModel):
    """Match credit of one query against its ground truth."""

    query: int
    ground_truth: list[list[int]]
    exact: float
    matches: float


class MatchReport(BaseModel):
    """Exact and any (exact, subset or superset) match totals."""

    exact_matches: float = 0.0
    matches: float = 0.0
    queries: int = 0
    details: list[QueryMatch] = Field(default_factory=list)


class BenchRow(BaseModel):
    """One timed mining run of one estimator."""

    COLUMNS: ClassVar[tuple[str, ...]] = (
        "estimator",
        "n",
        "d",
        "depth",
        "queries",
        "build_ms",
        "search_ms",
        "subspaces_scored",
    )

    estimator: str
    n: int
    d: int
    depth: int
    queries: int
    build_ms: float
    search_ms: float
    subspaces_scored: int

    def as_csv(self: BenchRow) -> str:
        """Return the row as one CSV line (no trailing newline)."""
        return ",".join(
            f"{v:.3f}" if isinstance(v, float) else str(v)
            for v in (getattr(self, c) for c in self.COLUMNS)
        )


class SynthResult(BaseModel):
    """Files written by ``synth`` and the shape of the generated data."""

    data: str
    truth: str
    n: int
    d: int
    outliers: int


def render_match_report(report: MatchReport) -> str:
    """Render a match report as plain text; a pure function of the report."""
    lines = [
        f"queries: {report.queries}",
        f"exact matches: {report.exact_matches:.4f}",
        f"matches: {report.matches:.4f}",
    ]
    for item in report.details:
        truth = ";".join(
            "{" + ",".join(str(a) for a in attrs) + "}" for attrs in item.ground_truth
        )
        lines.append(
            f"  query {item.query}: truth {truth} "
            f"exact={item.exact:.4f} matches={item.matches:.4f}"
        )
    return "\n".join(lines) + "\n"
