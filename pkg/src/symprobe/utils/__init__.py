"""Utility modules for symprobe."""

from .logger import ensure_logging, get_logger, setup_logging
from .stats_tracker import SolverStatistics, StatisticsTracker
from .validators import describe_validation_error, parse_threads_list

__all__ = [
    "SolverStatistics",
    "StatisticsTracker",
    "describe_validation_error",
    "ensure_logging",
    "get_logger",
    "parse_threads_list",
    "setup_logging",
]
