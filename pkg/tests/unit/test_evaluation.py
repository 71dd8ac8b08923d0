import pytest

from sgbeam.core.exceptions import TruthMismatchError, UnknownQueryError
from sgbeam.models.dataset import Dataset
from sgbeam.models.ground_truth import GroundTruth
from sgbeam.models.subspace import ScoredSubspace, Subspace
from sgbeam.services.evaluation import check_truth, score_matches


def _found(*subspaces: tuple[int, ...]) -> list[ScoredSubspace]:
    return [ScoredSubspace(Subspace(a), -float(i)) for i, a in enumerate(subspaces)]


def test_both_truths_found_exactly() -> None:
    gt = GroundTruth({315: (Subspace((0, 1)), Subspace((6, 7)))})
    report = score_matches({315: _found((6, 7), (2,), (0, 1))}, gt)
    assert report.exact_matches == 1.0
    assert report.matches == 1.0


def test_one_of_two_found_earns_half() -> None:
    gt = GroundTruth({5: (Subspace((0, 1)), Subspace((6, 7)))})
    report = score_matches({5: _found((0, 1), (3, 4))}, gt)
    assert report.exact_matches == 0.5
    assert report.matches == 0.5


def test_subset_counts_as_match_only() -> None:
    gt = GroundTruth({577: (Subspace((2, 3, 4, 5)),)})
    report = score_matches({577: _found((3, 4, 5))}, gt)
    assert report.exact_matches == 0.0
    assert report.matches == 1.0


def test_superset_counts_as_match() -> None:
    gt = GroundTruth({1: (Subspace((2, 3)), Subspace((5, 6)))})
    report = score_matches({1: _found((1, 2, 3), (5, 6))}, gt)
    assert report.exact_matches == 0.5
    assert report.matches == 1.0


def test_empty_result_earns_nothing() -> None:
    gt = GroundTruth({0: (Subspace((0, 1)),)})
    report = score_matches({0: []}, gt)
    assert (report.exact_matches, report.matches, report.queries) == (0.0, 0.0, 1)


def test_credit_capped_per_query() -> None:
    gt = GroundTruth({4: (Subspace((0, 1)),)})
    report = score_matches({4: _found((0, 1), (0,), (0, 1, 2), (1,))}, gt)
    assert report.exact_matches == 1.0
    assert report.matches == 1.0


def test_order_of_results_does_not_matter() -> None:
    gt = GroundTruth({0: (Subspace((0, 1)), Subspace((2, 3, 4)))})
    forward = _found((0, 1), (2, 3), (9,))
    assert score_matches({0: forward}, gt) == score_matches(
        {0: list(reversed(forward))}, gt
    )


def test_totals_over_queries_sorted() -> None:
    gt = GroundTruth({3: (Subspace((0, 1)),), 1: (Subspace((2, 3)),)})
    report = score_matches({3: _found((0, 1)), 1: _found((2,))}, gt)
    assert [d.query for d in report.details] == [1, 3]
    assert report.exact_matches == 1.0
    assert report.matches == 2.0
    assert report.details[0].ground_truth == [[2, 3]]


def test_query_without_truth_rejected() -> None:
    gt = GroundTruth({0: (Subspace((0, 1)),)})
    with pytest.raises(UnknownQueryError) as exc:
        score_matches({0: [], 9: []}, gt)
    assert exc.value.query == 9


def test_truth_must_fit_dataset() -> None:
    ds = Dataset.from_rows([[0.0, 1.0, 2.0]] * 5)
    check_truth(GroundTruth({4: (Subspace((1, 2)),)}), ds)
    with pytest.raises(TruthMismatchError, match="record 5"):
        check_truth(GroundTruth({5: (Subspace((0, 1)),)}), ds)
    with pytest.raises(TruthMismatchError, match="3 attributes"):
        check_truth(GroundTruth({0: (Subspace((1, 3)),)}), ds)
