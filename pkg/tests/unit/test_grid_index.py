import itertools
import math

import numpy as np
import pytest

from sgbeam.core.config import settings
from sgbeam.models.bitset import BitSetVector
from sgbeam.models.dataset import AttributeStats, Dataset
from sgbeam.models.grid import BinGrid, CostMeter
from sgbeam.models.subspace import Subspace
from sgbeam.schemas.miner import BinRule
from sgbeam.services.grid_index import (
    bin_attribute,
    bin_width,
    build_grid,
    fd_bin_width,
    neighborhood_count,
    ordinary_count,
    record_counts,
    scott_bin_width,
    sturges_bin_width,
)
from tests.utils import OracleGrid, oracle_assignments, random_dataset

EXAMPLE_VALUES = [0.0, 0.1, 0.2, 1.0, 2.9]


def _stats(
    iqr: float = 0.0, stddev: float = 0.0, lo: float = 0.0, hi: float = 1.0
) -> AttributeStats:
    return AttributeStats(min=lo, max=hi, stddev=stddev, iqr=iqr, q1=lo, q3=lo + iqr)


def _example_grid() -> BinGrid:
    ab = bin_attribute(EXAMPLE_VALUES, 1.0)
    return BinGrid(attributes=(ab,), length=len(EXAMPLE_VALUES), block_size=64)


def test_fd_width_from_iqr() -> None:
    assert fd_bin_width(_stats(iqr=4.0), 8) == pytest.approx(4.0)
    assert fd_bin_width(_stats(iqr=1.34), 1) == pytest.approx(2.68)


def test_fd_width_falls_back_to_scott() -> None:
    width = fd_bin_width(_stats(iqr=0.0, stddev=2.0), 27)
    assert width == pytest.approx(3.49 * 2.0 / 3.0)
    assert width == scott_bin_width(_stats(stddev=2.0), 27)


def test_fd_width_zero_for_constant() -> None:
    assert fd_bin_width(_stats(), 10) == 0.0


def test_fd_width_needs_records() -> None:
    with pytest.raises(ValueError, match="n >= 1"):
        fd_bin_width(_stats(iqr=1.0), 0)


def test_sturges_width() -> None:
    assert sturges_bin_width(_stats(lo=0.0, hi=10.0), 16) == pytest.approx(2.0)
    assert sturges_bin_width(_stats(lo=3.0, hi=3.0), 16) == 0.0


def test_rule_dispatch() -> None:
    stats = _stats(iqr=1.0, stddev=1.0, lo=0.0, hi=4.0)
    assert bin_width(stats, 8, BinRule.FD) == fd_bin_width(stats, 8)
    assert bin_width(stats, 8, BinRule.SCOTT) == scott_bin_width(stats, 8)
    assert bin_width(stats, 8, BinRule.STURGES) == sturges_bin_width(stats, 8)


def test_example_bins_and_pseudo_bins() -> None:
    ab = bin_attribute(EXAMPLE_VALUES, 1.0)
    assert ab.bin_count == 3
    assert [ab.bin(i).popcount() for i in range(3)] == [3, 1, 1]
    assert [ab.pseudo_bin(i).popcount() for i in range(3)] == [4, 5, 2]


def test_example_counts_at_one_point_five() -> None:
    grid = _example_grid()
    s = Subspace((0,))
    assert neighborhood_count(grid, s, [1.5]) == 5
    assert ordinary_count(grid, s, [1.5]) == 1


def test_constant_attribute_single_bin() -> None:
    ab = bin_attribute([4.0, 4.0, 4.0], 0.0)
    assert ab.bin_count == 1
    assert ab.bin(0).popcount() == 3
    assert ab.pseudo_bin(0) == ab.bin(0)


def test_empty_edge_bin_counts_zero() -> None:
    ab = bin_attribute([0.0, 0.1, 0.2, 0.3, 3.0], 1.0)
    grid = BinGrid(attributes=(ab,), length=5, block_size=64)
    assert ab.bin(1).popcount() == 0
    assert ordinary_count(grid, Subspace((0,)), [1.5]) == 0


def test_out_of_range_values_clamp() -> None:
    grid = _example_grid()
    ab = grid.attributes[0]
    for value in (-1e300, -3.0, 0.0, 2.9, 7.0, 1e300):
        assert 0 <= ab.index_of(value) < ab.bin_count
    assert ordinary_count(grid, Subspace((0,)), [-50.0]) == 3
    assert ordinary_count(grid, Subspace((0,)), [50.0]) == 1


def test_partition_property(rng: np.random.Generator) -> None:
    ds = random_dataset(rng, 211, 5, constant=3)
    grid = build_grid(ds, block_size=16)
    for a, ab in enumerate(grid.attributes):
        total = sum(ab.bin(i).popcount() for i in range(ab.bin_count))
        assert total == ds.n
        members = np.zeros(ds.n, dtype=int)
        for i in range(ab.bin_count):
            members += ab.bin(i).to_mask()
        assert members.tolist() == [1] * ds.n
        assert ab.assignments.tolist() == oracle_assignments(
            ds.column(a).tolist(), fd_bin_width(ds.stats[a], ds.n)
        )


def test_pseudo_bin_bounds(rng: np.random.Generator) -> None:
    grid = build_grid(random_dataset(rng, 150, 4))
    for ab in grid.attributes:
        for i in range(ab.bin_count):
            pseudo = ab.pseudo_bin(i)
            assert (pseudo & ab.bin(i)) == ab.bin(i)
            neighbours = [j for j in (i - 1, i, i + 1) if 0 <= j < ab.bin_count]
            assert pseudo.popcount() <= sum(ab.bin(j).popcount() for j in neighbours)


def test_bin_count_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setattr(settings, "MAX_BINS_PER_ATTRIBUTE", 4)
    ab = bin_attribute([0.0, 1.0, 2.0, 100.0], 1.0)
    assert ab.bin_count == 4
    assert ab.bin_width == pytest.approx(25.0)
    assert ab.assignments.tolist() == [0, 0, 0, 3]


def test_build_grid_rejects_block_size(small_ds: Dataset) -> None:
    with pytest.raises(ValueError, match="Block size"):
        build_grid(small_ds, block_size=48)


def test_sgrid_matches_raw_cell_enumeration() -> None:
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(2, 301))
        d = int(rng.integers(1, 7))
        ds = random_dataset(rng, n, d)
        grid = build_grid(ds, block_size=int(rng.choice([8, 16, 32, 64])))
        oracle = OracleGrid(ds)
        probes = [ds.row(int(i)) for i in rng.integers(0, n, size=3)]
        probes.append(rng.normal(0.0, 20.0, size=d))
        for k in range(1, min(d, 4) + 1):
            for attrs in itertools.combinations(range(d), k):
                s = Subspace(attrs)
                cells = oracle.cells(s)
                expected = {
                    cell: oracle.count_cell(cells, cell) for cell in cells
                }
                record_cells = zip(*(oracle.assignments[a] for a in attrs), strict=True)
                assert record_counts(grid, s, smoothed=True).tolist() == [
                    expected[cell] for cell in record_cells
                ]
                for point in probes:
                    assert neighborhood_count(grid, s, point) == oracle.count(s, point)
                    assert ordinary_count(grid, s, point) == oracle.count(
                        s, point, smoothed=False
                    )


def test_pseudo_bins_equal_union_of_raw_bin_intersections() -> None:
    rng = np.random.default_rng(11)
    for _ in range(30):
        ds = random_dataset(rng, int(rng.integers(5, 200)), 4)
        grid = build_grid(ds, block_size=32)
        for k in range(1, 5):
            for attrs in itertools.combinations(range(4), k):
                centre = [
                    int(rng.integers(0, grid.attributes[a].bin_count)) for a in attrs
                ]
                union = BitSetVector.from_mask(np.zeros(ds.n, dtype=bool), 32)
                for offsets in itertools.product((-1, 0, 1), repeat=k):
                    cell = [c + o for c, o in zip(centre, offsets, strict=True)]
                    if any(
                        not 0 <= i < grid.attributes[a].bin_count
                        for a, i in zip(attrs, cell, strict=True)
                    ):
                        continue
                    acc = grid.attributes[attrs[0]].bin(cell[0])
                    for a, i in zip(attrs[1:], cell[1:], strict=True):
                        acc = acc & grid.attributes[a].bin(i)
                    union = union | acc
                fast = grid.attributes[attrs[0]].pseudo_bin(centre[0])
                for a, i in zip(attrs[1:], centre[1:], strict=True):
                    fast = fast & grid.attributes[a].pseudo_bin(i)
                assert fast == union


def test_corner_and_interior_neighbourhoods_cover_expected_bins() -> None:
    values = np.arange(10, dtype=float)
    rows = np.array(list(itertools.product(values, repeat=3)))
    ds = Dataset.from_rows(rows)
    grid = BinGrid(
        attributes=tuple(bin_attribute(ds.column(a), 1.0) for a in range(3)),
        length=ds.n,
        block_size=64,
    )
    # nine bins per attribute; the last one holds both 8 and 9
    assert neighborhood_count(grid, Subspace((0, 1)), [5.5, 5.5, 0.0]) == 9 * 10
    assert neighborhood_count(grid, Subspace((0, 1, 2)), [0.0, 0.0, 0.0]) == 8
    assert neighborhood_count(grid, Subspace((0, 1, 2)), [4.2, 4.2, 4.2]) == 27


def test_monotone_and_overlap_bound(rng: np.random.Generator) -> None:
    ds = random_dataset(rng, 250, 4)
    grid = build_grid(ds)
    oracle = OracleGrid(ds)
    for k in range(1, 5):
        for attrs in itertools.combinations(range(4), k):
            s = Subspace(attrs)
            smooth = record_counts(grid, s, smoothed=True)
            plain = record_counts(grid, s, smoothed=False)
            assert (smooth >= plain).all()
            centre = [oracle.index(a, ds.columns[a, 0]) for a in attrs]
            shifted = [centre[0] + 1, *centre[1:]]
            shared = oracle.neighbours(centre) & oracle.neighbours(shifted)
            assert len(shared) <= 2 * 3 ** (k - 1)


def test_cost_meter_counts_intersections() -> None:
    ds = Dataset.from_rows(np.arange(300, dtype=float).reshape(100, 3))
    grid = build_grid(ds, block_size=16)
    meter = CostMeter()
    neighborhood_count(grid, Subspace((0, 2)), ds.row(4), meter)
    ordinary_count(grid, Subspace((0, 1, 2)), ds.row(9), meter)
    assert meter.estimations == 2
    assert meter.intersections == 5
    assert meter.words == 5 * math.ceil(100 / 16)
