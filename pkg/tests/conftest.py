from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest

from sgbeam.core.logging import configure_logging
from sgbeam.models.dataset import Dataset
from sgbeam.repositories.dataset_repository import write_csv
from sgbeam.repositories.truth_repository import write_truth
from sgbeam.schemas.synthetic import SyntheticSpec
from sgbeam.services.synthetic import generate


@pytest.fixture(autouse=True)
def _reset_logging() -> Iterator[None]:
    # commands may rebind the log stream to a per-test capture
    yield
    configure_logging()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def small_ds(rng: np.random.Generator) -> Dataset:
    rows = rng.normal(0.0, 1.0, size=(60, 4))
    rows[7] = [4.0, -4.0, 0.0, 0.0]
    return Dataset.from_rows(rows)


@pytest.fixture
def planted_spec() -> SyntheticSpec:
    return SyntheticSpec(n=400, d=6, group_sizes=[2, 2], outlier_count=4, seed=3)


@pytest.fixture
def planted_files(tmp_path: Path, planted_spec: SyntheticSpec) -> Path:
    ds, gt = generate(planted_spec)
    prefix = tmp_path / "planted"
    write_csv(ds, prefix.with_suffix(".csv"))
    write_truth(gt, prefix.with_suffix(".truth"))
    return prefix
