"""Credit for mined subspaces against planted ground truth."""

from __future__ import annotations

from typing import TYPE_CHECKING

from sgbeam.core.exceptions import TruthMismatchError, UnknownQueryError
from sgbeam.schemas.synthetic import MatchReport, QueryMatch

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Mapping, Sequence

    from sgbeam.models.dataset import Dataset
    from sgbeam.models.ground_truth import GroundTruth
    from sgbeam.models.subspace import ScoredSubspace, Subspace


def _credit(truths: tuple[Subspace, ...], found: set[Subspace]) -> tuple[float, float]:
    """Return (exact, any) credit of one query, each at most 1."""
    if not truths:
        return 0.0, 0.0
    share = 1.0 / len(truths)
    exact = 0
    near = 0
    for truth in truths:
        if truth in found:
            exact += 1
        elif any(
            s.is_strict_subset_of(truth) or s.is_strict_superset_of(truth)
            for s in found
        ):
            near += 1
    return min(1.0, exact * share), min(1.0, (exact + near) * share)


def score_matches(
    results: Mapping[int, Sequence[ScoredSubspace]], gt: GroundTruth
) -> MatchReport:
    """Total the exact and any-match credit of mined subspaces.

    Each of a query's g ground-truth subspaces earns 1/g: towards exact
    matches when it was returned as is, and towards matches when it or a
    strict subset or superset of it was returned.

    Raises:
        UnknownQueryError: If a query has no ground-truth entry.
    """
    report = MatchReport()
    for query in sorted(results):
        if query not in gt:
            msg = f"Query record {query} has no ground truth."
            raise UnknownQueryError(msg, query=query)
        truths = gt.subspaces_for(query)
        found = {item.subspace for item in results[query]}
        exact, matches = _credit(truths, found)
        report.details.append(
            QueryMatch(
                query=query,
                ground_truth=[list(t.attrs) for t in truths],
                exact=exact,
                matches=matches,
            )
        )
        report.exact_matches += exact
        report.matches += matches
        report.queries += 1
    return report


def check_truth(gt: GroundTruth, ds: Dataset) -> None:
    """Ensure every truth record and attribute exists in ``ds``.

    Raises:
        TruthMismatchError: On the first record or attribute out of range.
    """
    for record_id in gt.record_ids:
        if record_id >= ds.n:
            msg = f"Truth lists record {record_id} but the data has {ds.n} rows."
            raise TruthMismatchError(msg)
        for s in gt.subspaces_for(record_id):
            if s.attrs[-1] >= ds.d:
                msg = (
                    f"Truth for record {record_id} names subspace {s} "
                    f"but the data has {ds.d} attributes."
                )
                raise TruthMismatchError(msg)
