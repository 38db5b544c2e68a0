"""
Structured logging for symprobe with rich console output.

Everything goes to stderr; stdout belongs to solver output.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

import structlog
from rich.console import Console
from rich.logging import RichHandler


def setup_logging(
    log_level: str = "WARNING",
    log_file: Optional[Path] = None,
    json_logs: bool = False,
) -> None:
    """
    Configure structured logging for the library and the CLI.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional file path for log output
        json_logs: Render events as JSON instead of the console format
    """
    level = _level(log_level)

    handlers: List[logging.Handler] = []

    console_handler = RichHandler(
        console=Console(stderr=True),
        rich_tracebacks=True,
        markup=False,
        show_time=True,
        show_path=False,
    )
    console_handler.setLevel(level)
    handlers.append(console_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter("%(message)s"))
        handlers.append(file_handler)

    logging.basicConfig(level=level, format="%(message)s", handlers=handlers, force=True)
    _configure_structlog(level, json_logs)


def ensure_logging(log_level: str = "WARNING", json_logs: bool = False) -> None:
    """
    Route structlog to stderr at ``log_level`` unless logging is already set up.

    Library entry points call this so events never reach stdout through
    structlog's defaults; stdlib handlers of the host application are left alone.
    """
    if not structlog.is_configured():
        _configure_structlog(_level(log_level), json_logs)


def _level(log_level: str) -> int:
    level = logging.getLevelName(log_level.upper())
    return level if isinstance(level, int) else logging.WARNING


def _configure_structlog(level: int, json_logs: bool) -> None:
    processors: List[structlog.types.Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
    ]
    if json_logs:
        processors.append(structlog.processors.JSONRenderer())
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty()))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(level),
        context_class=dict,
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str) -> structlog.BoundLogger:
    """
    Get a structured logger instance.

    Args:
        name: Logger name (usually __name__)
    """
    return structlog.get_logger(name)
