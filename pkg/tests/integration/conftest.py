from collections.abc import Callable
from pathlib import Path

import pytest

from sgbeam.main import main

Run = Callable[..., tuple[int, str, str]]


@pytest.fixture
def run_cli(capsys: pytest.CaptureFixture[str]) -> Run:
    """Run the command line in-process and return (status, stdout, stderr)."""

    def run(*argv: str | Path) -> tuple[int, str, str]:
        status = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return status, out, err

    return run


@pytest.fixture
def data_csv(planted_files: Path) -> Path:
    return planted_files.with_suffix(".csv")


@pytest.fixture
def truth_file(planted_files: Path) -> Path:
    return planted_files.with_suffix(".truth")
