"""Argument types and helpers shared by the commands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING

from pydantic import ValidationError

from sgbeam.core.config import settings
from sgbeam.core.exceptions import ConfigError
from sgbeam.models.bitset import WORD_DTYPES
from sgbeam.schemas.miner import BinRule, Estimator, MinerConfig

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Callable

HEADER_CHOICES = {"auto": None, "yes": True, "no": False}


def int_at_least(minimum: int) -> Callable[[str], int]:
    """Return an argparse type accepting integers ``>= minimum``."""

    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError as exc:
            msg = f"expected an integer, got {text!r}"
            raise argparse.ArgumentTypeError(msg) from exc
        if value < minimum:
            msg = f"must be at least {minimum}, got {value}"
            raise argparse.ArgumentTypeError(msg)
        return value

    return parse


def id_list(text: str) -> list[int]:
    """Parse ``0,3,7`` into record or attribute ids."""
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        msg = f"expected comma-separated integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if not values or any(v < 0 for v in values):
        msg = f"expected non-negative integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return values


def float_list(text: str) -> list[float]:
    """Parse ``0.25,0.5,1`` into reals."""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        msg = f"expected comma-separated numbers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if not values:
        msg = "expected at least one number"
        raise argparse.ArgumentTypeError(msg)
    return values


def estimator_list(text: str) -> list[Estimator]:
    """Parse ``sgrid,grid,kde`` into estimator choices."""
    try:
        return [Estimator(part.strip()) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        choices = ",".join(e.value for e in Estimator)
        msg = f"estimators must come from {choices}, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc


def add_data_arguments(parser: argparse.ArgumentParser) -> None:
    """Add ``--data`` and ``--header``."""
    parser.add_argument("--data", type=Path, required=True, help="Input CSV file.")
    parser.add_argument(
        "--header",
        choices=sorted(HEADER_CHOICES),
        default="auto",
        help="Whether the CSV starts with a header line (default: auto-detect).",
    )


def add_search_arguments(
    parser: argparse.ArgumentParser, *, with_estimator: bool = True
) -> None:
    """Add the beam-search flags shared by mine, eval and bench."""
    if with_estimator:
        parser.add_argument(
            "--estimator",
            choices=[e.value for e in Estimator],
            default=settings.DEFAULT_ESTIMATOR,
        )
    parser.add_argument(
        "--depth", type=int_at_least(2), default=settings.DEFAULT_DEPTH
    )
    parser.add_argument(
        "--beam-width", type=int_at_least(1), default=settings.DEFAULT_BEAM_WIDTH
    )
    parser.add_argument(
        "--top-k", type=int_at_least(1), default=settings.DEFAULT_TOP_K
    )
    parser.add_argument(
        "--block-size",
        type=int,
        choices=sorted(WORD_DTYPES),
        default=settings.DEFAULT_BLOCK_SIZE,
    )
    parser.add_argument(
        "--bin-rule",
        choices=[r.value for r in BinRule],
        default=settings.DEFAULT_BIN_RULE,
    )
    parser.add_argument(
        "--jobs",
        type=int_at_least(1),
        default=1,
        help="Worker threads for multi-query runs.",
    )


def add_output_arguments(
    parser: argparse.ArgumentParser, *, with_format: bool = True
) -> None:
    """Add ``--out``, ``--metrics-out`` and optionally ``--format``."""
    if with_format:
        parser.add_argument("--format", choices=["json", "text"], default="json")
    parser.add_argument("--out", type=Path, help="Write output here, not stdout.")
    add_metrics_argument(parser)


def add_metrics_argument(parser: argparse.ArgumentParser) -> None:
    """Add ``--metrics-out``."""
    parser.add_argument(
        "--metrics-out",
        type=Path,
        help="Write Prometheus metrics here after the command.",
    )


def miner_config(
    args: argparse.Namespace, estimator: str | None = None
) -> MinerConfig:
    """Build a ``MinerConfig`` from parsed flags.

    Raises:
        ConfigError: If the combined values fail validation.
    """
    values: dict[str, object] = {
        "max_depth": args.depth,
        "beam_width": args.beam_width,
        "top_k": args.top_k,
        "estimator": estimator or args.estimator,
        "block_size": args.block_size,
        "bin_rule": args.bin_rule,
        "tau": getattr(args, "tau", None),
        "use_cache": not getattr(args, "no_cache", False),
    }
    try:
        return MinerConfig.model_validate(values)
    except ValidationError as exc:
        msg = f"Invalid miner configuration: {exc.errors()[0]['msg']}"
        raise ConfigError(msg) from exc


def emit(text: str, out: Path | None) -> None:
    """Write command output to ``out`` or stdout."""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
