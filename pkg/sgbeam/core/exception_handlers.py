"""Error handlers for the command-line entry points.

Maps failures to the stable exit-code contract:
- 0 success (never produced here)
- 1 runtime/data error (SgbeamError subclasses and unexpected failures)
- 2 usage error (raised by argparse itself, not handled here)
"""

from __future__ import annotations

import sys
from typing import TextIO

from sgbeam.core.exceptions import (
    ConfigError,
    DataLoadError,
    DegenerateBandwidthError,
    EmptyInputError,
    SgbeamError,
    TruthMismatchError,
    UnknownQueryError,
)
from sgbeam.core.logging import logger

EXIT_OK = 0
EXIT_RUNTIME_ERROR = 1
EXIT_USAGE_ERROR = 2

# Stable machine-readable codes per error family
_ERROR_CODES: dict[type[SgbeamError], str] = {
    DataLoadError: "data_load_error",
    EmptyInputError: "empty_input",
    ConfigError: "config_error",
    DegenerateBandwidthError: "degenerate_bandwidth",
    UnknownQueryError: "unknown_query",
    TruthMismatchError: "truth_mismatch",
}


def error_code(exc: BaseException) -> str:
    """Return the stable error code for ``exc`` (``internal_error`` if unknown)."""
    for exc_type in type(exc).__mro__:
        code = _ERROR_CODES.get(exc_type)  # type: ignore[arg-type]
        if code is not None:
            return code
    if isinstance(exc, SgbeamError):
        return "app_error"
    return "internal_error"


def _write_message(stream: TextIO, code: str, detail: str) -> None:
    """Write the one-line ``error[code]: detail`` message for humans."""
    stream.write(f"error[{code}]: {detail}\n")
    stream.flush()


def app_error_handler(
    exc: SgbeamError, command: str, stream: TextIO | None = None
) -> int:
    """Report a domain failure and return exit status 1."""
    code = error_code(exc)
    logger.warning(
        "AppError handled",
        exc_type=type(exc).__name__,
        code=code,
        detail=str(exc),
        command=command,
    )
    _write_message(stream or sys.stderr, code, str(exc))
    return EXIT_RUNTIME_ERROR


def unhandled_exception_handler(
    exc: Exception, command: str, stream: TextIO | None = None
) -> int:
    """Catch-all handler for unexpected exceptions.

    Logs the exception with its traceback and reports a generic message
    without leaking internals to the terminal.
    """
    logger.exception(
        "Unhandled exception",
        exc_type=type(exc).__name__,
        command=command,
    )
    _write_message(stream or sys.stderr, "internal_error", "Internal error.")
    return EXIT_RUNTIME_ERROR


def handle_error(exc: Exception, command: str, stream: TextIO | None = None) -> int:
    """Dispatch ``exc`` to the matching handler and return its exit status."""
    if isinstance(exc, SgbeamError):
        return app_error_handler(exc, command, stream)
    return unhandled_exception_handler(exc, command, stream)
