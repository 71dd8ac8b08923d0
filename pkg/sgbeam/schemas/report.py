"""Schemas for mining run reports and their text rendering."""

from __future__ import annotations

from pydantic import BaseModel, Field

from sgbeam.models.subspace import ScoredSubspace, Subspace
from sgbeam.schemas.miner import MinerConfig


class ScoredSubspaceOut(BaseModel):
    """One ranked subspace of a query."""

    attrs: list[int]
    z: float

    @classmethod
    def from_model(
        cls: type[ScoredSubspaceOut], item: ScoredSubspace
    ) -> ScoredSubspaceOut:
        """Convert a domain ``ScoredSubspace``."""
        return cls(attrs=list(item.subspace.attrs), z=item.z)

    def to_model(self: ScoredSubspaceOut) -> ScoredSubspace:
        """Convert back to a domain ``ScoredSubspace``."""
        return ScoredSubspace(Subspace.of(self.attrs), self.z)


class QueryResult(BaseModel):
    """Ranked subspaces for one query record."""

    query: int
    subspaces: list[ScoredSubspaceOut] = Field(default_factory=list)


class DataInfo(BaseModel):
    """Echo of the dataset a run used."""

    path: str
    n: int
    d: int


class CacheCounts(BaseModel):
    """Score cache activity of a run."""

    hits: int = 0
    misses: int = 0
    entries: int = 0


class TimingBreakdown(BaseModel):
    """Wall-clock milliseconds per phase."""

    ingest_ms: float
    build_ms: float
    search_ms: float


class RunReport(BaseModel):
    """Machine-readable result of ``mine``."""

    config: MinerConfig
    data: DataInfo
    queries: list[QueryResult]
    cache: CacheCounts = Field(default_factory=CacheCounts)
    subspaces_scored: int = 0
    timing: TimingBreakdown | None = None


def render_run_report(report: RunReport) -> str:
    """Render a report as plain text; a pure function of the report."""
    cfg = report.config
    lines = [
        f"data: {report.data.path} (n={report.data.n}, d={report.data.d})",
        (
            f"estimator={cfg.estimator} depth={cfg.max_depth} "
            f"beam_width={cfg.beam_width} top_k={cfg.top_k} "
            f"block_size={cfg.block_size} bin_rule={cfg.bin_rule}"
            + (f" tau={cfg.tau}" if cfg.tau is not None else "")
        ),
    ]
    for result in report.queries:
        lines.append(f"query {result.query}:")
        if not result.subspaces:
            lines.append("  (no subspaces)")
        for rank, item in enumerate(result.subspaces, start=1):
            attrs = "{" + ",".join(str(a) for a in item.attrs) + "}"
            lines.append(f"  {rank:>3}. {attrs:<24} z={item.z:.6f}")
    lines.append(
        f"cache: hits={report.cache.hits} misses={report.cache.misses} "
        f"entries={report.cache.entries}; subspaces scored={report.subspaces_scored}"
    )
    if report.timing is not None:
        t = report.timing
        lines.append(
            f"timing: ingest={t.ingest_ms:.1f}ms build={t.build_ms:.1f}ms "
            f"search={t.search_ms:.1f}ms"
        )
    return "\n".join(lines) + "\n"
