"""CSV persistence for datasets."""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

from sgbeam.core.exceptions import DataLoadError, EmptyInputError
from sgbeam.core.logging import format_attrs, logger
from sgbeam.models.dataset import Dataset

# %.17g round-trips every float64 exactly
_FLOAT_FORMAT = "%.17g"


def _looks_like_header(cells: pd.Series) -> bool:
    """Return True if no cell of the first line parses as a number."""
    parsed = pd.to_numeric(cells.str.strip(), errors="coerce")
    return bool(parsed.isna().all())


def _read_cells(path: Path) -> pd.DataFrame:
    """Read every cell as text, mapping pandas failures to load errors."""
    try:
        return pd.read_csv(
            path,
            header=None,
            dtype=str,
            keep_default_na=False,
            skip_blank_lines=True,
            skipinitialspace=True,
        )
    except pd.errors.EmptyDataError as exc:
        msg = f"No data in {path}."
        raise EmptyInputError(msg) from exc
    except pd.errors.ParserError as exc:
        msg = f"Malformed CSV in {path}: {exc}"
        raise DataLoadError(msg) from exc


def _parse_body(body: pd.DataFrame) -> np.ndarray:
    """Convert text cells to float64, naming the first invalid cell."""
    coerced = body.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    bad = ~np.isfinite(coerced.to_numpy(dtype=np.float64))
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        cell = body.iat[row, col]
        msg = (
            f"Invalid value {cell!r} at row {row}, column {col}: "
            "expected a finite real number."
        )
        raise DataLoadError(msg, row=row, column=col)
    # float() on the original text keeps values bit-exact
    return np.asarray(body.to_numpy(dtype=object), dtype=np.float64)


def load_csv(path: Path | str, *, has_header: bool | None = None) -> Dataset:
    """Load a numeric CSV file into a dataset.

    Args:
        path: CSV file, comma separated, decimal-point reals.
        has_header: ``True``/``False`` to force header handling; ``None``
            treats the first line as a header when none of its cells is numeric.

    Returns:
        The loaded dataset; constant-valued columns are kept and logged.

    Raises:
        DataLoadError: If the file is missing or a cell is not a finite real.
        EmptyInputError: If the file holds no data rows.
    """
    path = Path(path)
    if not path.is_file():
        msg = f"Data file not found: {path}"
        raise DataLoadError(msg)
    cells = _read_cells(path)
    header = _looks_like_header(cells.iloc[0]) if has_header is None else has_header
    names: tuple[str, ...] | None = None
    if header:
        names = tuple(str(c).strip() for c in cells.iloc[0])
        cells = cells.iloc[1:].reset_index(drop=True)
    if cells.empty:
        msg = f"No data rows in {path}."
        raise EmptyInputError(msg)
    ds = Dataset.from_rows(_parse_body(cells), attribute_names=names)
    logger.info(
        "Dataset loaded",
        path=str(path),
        n=ds.n,
        d=ds.d,
        header=header,
        constant_attributes=format_attrs(ds.constant_attributes),
    )
    if ds.constant_attributes:
        logger.warning(
            "Constant attributes retained",
            path=str(path),
            attributes=format_attrs(ds.constant_attributes),
        )
    return ds


def write_csv(ds: Dataset, path: Path | str, *, header: bool = True) -> None:
    """Write ``ds`` as CSV so that :func:`load_csv` restores identical values."""
    frame = pd.DataFrame(ds.to_rows(), columns=list(ds.names()))
    frame.to_csv(
        Path(path),
        header=header,
        index=False,
        float_format=_FLOAT_FORMAT,
        lineterminator="\n",
    )
