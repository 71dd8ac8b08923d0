"""Ground-truth sidecar files: one ``record_id: {a,b};{c,d}`` line per outlier."""

from __future__ import annotations

import re
from pathlib import Path

from sgbeam.core.exceptions import DataLoadError
from sgbeam.models.ground_truth import GroundTruth
from sgbeam.models.subspace import Subspace

_LINE = re.compile(r"^\s*(\d+)\s*:\s*(.*?)\s*$")
_GROUP = re.compile(r"^\{\s*(\d+(?:\s*,\s*\d+)*)\s*\}$")


def format_truth_line(record_id: int, subspaces: tuple[Subspace, ...]) -> str:
    """Return the sidecar line for one outlier."""
    return f"{record_id}: " + ";".join(str(s) for s in subspaces)


def _parse_line(line: str, lineno: int) -> tuple[int, tuple[Subspace, ...]]:
    match = _LINE.match(line)
    if match is None:
        msg = f"Malformed truth line {lineno}: {line!r}"
        raise DataLoadError(msg, row=lineno)
    record_id = int(match.group(1))
    subspaces = []
    for part in match.group(2).split(";"):
        group = _GROUP.match(part.strip())
        if group is None:
            msg = f"Malformed subspace {part.strip()!r} on truth line {lineno}."
            raise DataLoadError(msg, row=lineno)
        try:
            subspaces.append(Subspace.of(int(a) for a in group.group(1).split(",")))
        except ValueError as exc:
            msg = f"Invalid subspace on truth line {lineno}: {exc}"
            raise DataLoadError(msg, row=lineno) from exc
    return record_id, tuple(subspaces)


def load_truth(path: Path | str) -> GroundTruth:
    """Read a ground-truth sidecar; an empty file yields an empty truth.

    Raises:
        DataLoadError: If the file is missing, malformed or repeats a record.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Truth file not found: {path}"
        raise DataLoadError(msg)
    outliers: dict[int, tuple[Subspace, ...]] = {}
    for lineno, line in enumerate(path.read_text().splitlines()):
        if not line.strip():
            continue
        record_id, subspaces = _parse_line(line, lineno)
        if record_id in outliers:
            msg = f"Record {record_id} listed twice in {path}."
            raise DataLoadError(msg, row=lineno)
        outliers[record_id] = subspaces
    return GroundTruth(outliers=outliers)


def write_truth(gt: GroundTruth, path: Path | str) -> None:
    """Write ``gt`` with records in ascending id order."""
    lines = [format_truth_line(r, gt.subspaces_for(r)) for r in gt.record_ids]
    Path(path).write_text("".join(f"{line}\n" for line in lines))
