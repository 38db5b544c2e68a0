"""
Mode switching heuristics.

A pure function of counters: the solver gathers ``ModeSignals`` and asks
``next_mode`` which mode to run.
"""

from dataclasses import dataclass

from ..config import SolverConfig
from .schemas import SolverMode


@dataclass(frozen=True)
class ModeSignals:
    """
    Counters the controller decides on.

    Attributes:
        mode: mode that just ran
        base_aligned_exhausted: every base point is complete or hard
        bfs_available: the next BFS level may be computed (not blocked by
            the memory cap and not past the leaf level)
        next_level_cost: estimated seconds to compute the next BFS level
        cost_so_far: seconds spent computing BFS levels, starting from the
            refinement time of the target path
        next_level_bytes: estimated memory of the next BFS level
        level_walks: level-search walks on the current level
        level_occurrences: of those, walks that produced an automorphism
        level_width: surviving nodes on the current level
    """
    mode: SolverMode
    base_aligned_exhausted: bool = False
    bfs_available: bool = True
    next_level_cost: float = 0.0
    cost_so_far: float = 0.0
    next_level_bytes: int = 0
    level_walks: int = 0
    level_occurrences: int = 0
    level_width: int = 1


def initial_mode(config: SolverConfig) -> SolverMode:
    return SolverMode.BASE_ALIGNED if config.enable_base_aligned else SolverMode.BFS


def estimate_next_level_cost(width: int, cell_size: int, mean_refine_seconds: float) -> float:
    """Surviving nodes × cell size × mean refinement time."""
    return width * cell_size * mean_refine_seconds


def _bfs_affordable(signals: ModeSignals, config: SolverConfig) -> bool:
    if not signals.bfs_available:
        return False
    if signals.next_level_bytes > config.bfs_memory_cap_bytes:
        return False
    return signals.next_level_cost <= config.bfs_cost_factor * signals.cost_so_far


def next_mode(signals: ModeSignals, config: SolverConfig) -> SolverMode:
    """
    Decide the next mode.

    - base-aligned search runs until it is exhausted
    - BFS continues while the next level is affordable, else level search
    - level search returns to BFS once, after ``min_level_walks`` walks, the
      share of walks reaching an occurrence drops below 1 / (2 · width) and
      the next level is affordable
    """
    if signals.mode is SolverMode.BASE_ALIGNED and not signals.base_aligned_exhausted:
        return SolverMode.BASE_ALIGNED
    if signals.mode is SolverMode.LEVEL_SEARCH:
        if signals.level_walks < config.min_level_walks:
            return SolverMode.LEVEL_SEARCH
        rate = signals.level_occurrences / signals.level_walks
        if rate < 1.0 / (2 * signals.level_width) and _bfs_affordable(signals, config):
            return SolverMode.BFS
        return SolverMode.LEVEL_SEARCH
    if _bfs_affordable(signals, config):
        return SolverMode.BFS
    return SolverMode.LEVEL_SEARCH
