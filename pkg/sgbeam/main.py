"""Command-line entry point for sgbeam.

Builds the argument parser, registers the commands and maps failures to exit
codes: 0 on success, 1 for data and runtime errors, 2 for usage errors
(reported by argparse itself).
"""

from __future__ import annotations

import argparse
import sys
from typing import TYPE_CHECKING

from sgbeam.cli import bench, evaluate, mine, synth
from sgbeam.core.exception_handlers import EXIT_OK, handle_error
from sgbeam.core.logging import configure_logging, logger
from sgbeam.core.metrics import write_metrics

if TYPE_CHECKING:  # pragma: no cover - types only
    from collections.abc import Sequence


def build_parser() -> argparse.ArgumentParser:
    """Return the top-level parser with every command registered."""
    parser = argparse.ArgumentParser(
        prog="sgbeam",
        description=(
            "Outlying aspects mining with beam search over smoothed-grid, "
            "grid or kernel density Z-scores."
        ),
    )
    parser.add_argument("--log-level", help="Override SGBEAM_LOG_LEVEL.")
    parser.add_argument(
        "--log-format", choices=["json", "console"], help="Override SGBEAM_LOG_FORMAT."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    mine.register(subparsers)
    synth.register(subparsers)
    evaluate.register(subparsers)
    bench.register(subparsers)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv``, run the command and return its exit status."""
    args = build_parser().parse_args(argv)
    if args.log_level or args.log_format:
        configure_logging(args.log_level, args.log_format)
    try:
        status = args.handler(args)
    except Exception as exc:  # noqa: BLE001
        status = handle_error(exc, args.command)
    if args.metrics_out is not None:
        write_metrics(args.metrics_out)
        logger.info("Metrics written", path=str(args.metrics_out))
    return status if status is not None else EXIT_OK


def run() -> None:
    """Console-script wrapper around :func:`main`."""
    sys.exit(main())
