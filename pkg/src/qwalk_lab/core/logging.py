"""Structured logging setup via structlog."""

from __future__ import annotations

import logging
import sys
from typing import Any

import numpy as np
import structlog

from qwalk_lab.core.exceptions import InvalidParameterError

LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")
MAX_LOGGED_ITEMS = 16


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if value.size > MAX_LOGGED_ITEMS:
            return f"<array shape={value.shape} dtype={value.dtype}>"
        return value.tolist()
    return value


def numpy_to_builtin(
    _logger: Any, _method: str, event_dict: structlog.types.EventDict
) -> structlog.types.EventDict:
    """Turn numpy scalars and small arrays into plain values; summarise large arrays."""
    return {key: _plain(value) for key, value in event_dict.items()}


def setup_logging(*, json_output: bool = False, level: str = "INFO") -> None:
    """Configure structlog processors and stdlib log level.

    Everything goes to stderr so JSON and CSV results on stdout stay byte-stable.
    """
    name = level.upper()
    if name not in LEVELS:
        raise InvalidParameterError(f"unknown log level '{level}', expected one of {LEVELS}")
    numeric_level: int = getattr(logging, name)

    processors: list[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        numpy_to_builtin,
    ]
    renderer: structlog.types.Processor = (
        structlog.processors.JSONRenderer(sort_keys=True)
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    processors.append(renderer)

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        # Each CLI invocation rebinds stderr; cached loggers would keep the old stream.
        cache_logger_on_first_use=False,
    )
    logging.basicConfig(level=numeric_level, stream=sys.stderr)
