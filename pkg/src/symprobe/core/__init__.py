"""Solver: abort criterion, operation modes and the top-level loop."""

from .abort import AbortCriterion, new_abort_state, record_sample
from .base_aligned import BaseAlignedOutcome, BaseAlignedSearch, base_aligned_search
from .bfs import BfsLevel, bfs_advance, initial_level
from .context import SearchContext
from .executor import WorkerPool
from .level_search import LevelSearch, level_search
from .mode_controller import ModeSignals, initial_mode, next_mode
from .schemas import AbortState, SolverMode, SolverResult, Termination
from .solver import Solver, solve

__all__ = [
    "AbortCriterion",
    "AbortState",
    "BaseAlignedOutcome",
    "BaseAlignedSearch",
    "BfsLevel",
    "LevelSearch",
    "ModeSignals",
    "SearchContext",
    "Solver",
    "SolverMode",
    "SolverResult",
    "Termination",
    "WorkerPool",
    "base_aligned_search",
    "bfs_advance",
    "initial_level",
    "initial_mode",
    "level_search",
    "new_abort_state",
    "next_mode",
    "record_sample",
    "solve",
]
