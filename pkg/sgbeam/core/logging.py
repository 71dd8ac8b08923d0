"""Structured logging setup and helpers."""

import sys

import structlog

from sgbeam.core.config import settings

# Map string log level to structlog/stdlib level
_LOG_LEVELS = {
    "CRITICAL": 50,
    "ERROR": 40,
    "WARNING": 30,
    "INFO": 20,
    "DEBUG": 10,
    "NOTSET": 0,
}


def resolve_level(name: str) -> int:
    """Return the numeric level for ``name``, defaulting to INFO."""
    return _LOG_LEVELS.get(name.upper(), _LOG_LEVELS["INFO"])


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """Configure structlog to write key/value events to stderr.

    Stdout is reserved for command output (reports, CSV rows), so every log
    event goes to stderr regardless of the renderer.

    Args:
        level: Log level name; falls back to ``settings.LOG_LEVEL``.
        fmt: ``json`` or ``console``; falls back to ``settings.LOG_FORMAT``.
    """
    fmt = (fmt or settings.LOG_FORMAT).lower()
    renderer = (
        structlog.dev.ConsoleRenderer(colors=False)
        if fmt == "console"
        else structlog.processors.JSONRenderer()
    )
    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            resolve_level(level or settings.LOG_LEVEL)
        ),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


configure_logging()

logger = structlog.get_logger()


def format_attrs(attrs: object) -> str:
    """Return a compact ``{a,b,c}`` rendering of attribute ids for log fields.

    Examples:
      - (0, 1) -> "{0,1}"
      - [] -> "{}"
      - None -> "{}"
    """
    if attrs is None:
        return "{}"
    try:
        items = list(attrs)  # type: ignore[call-overload]
    except TypeError:
        return str(attrs)
    return "{" + ",".join(str(int(a)) for a in items) + "}"
