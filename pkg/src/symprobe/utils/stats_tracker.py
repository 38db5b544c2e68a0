"""
Statistics tracking for solver runs.

Counters and per-mode wall time, safe to update from worker threads.
"""

import threading
import time
from contextlib import contextmanager
from typing import Dict, Iterator

from pydantic import BaseModel, Field


class SolverStatistics(BaseModel):
    """Snapshot of the counters of one solve."""
    nodes_expanded: int = 0
    nodes_pruned_invariant: int = 0
    nodes_pruned_deviation: int = 0
    nodes_merged: int = 0
    walks: int = 0
    occurrences: int = 0
    uniform_samples: int = 0
    sifts: int = 0
    generators_added: int = 0
    bfs_levels_completed: int = 0
    extra_targets_stored: int = 0
    mode_switches: int = 0
    refinements: int = 0
    refine_seconds: float = 0.0
    mode_seconds: Dict[str, float] = Field(default_factory=dict)

    @property
    def mean_refine_seconds(self) -> float:
        return self.refine_seconds / self.refinements if self.refinements else 0.0


_COUNTERS = tuple(
    name for name, info in SolverStatistics.model_fields.items() if info.annotation is int
)


class StatisticsTracker:
    """
    Accumulates solver counters and timers.

    Features:
    - Lock-protected increments from any thread
    - Per-mode wall time on a monotonic clock
    - Running refinement cost for the mode controller
    """

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._counts: Dict[str, int] = {name: 0 for name in _COUNTERS}
        self._refine_seconds = 0.0
        self._mode_seconds: Dict[str, float] = {}
        self._start = time.perf_counter()

    def increment(self, name: str, by: int = 1) -> None:
        if name not in self._counts:
            raise KeyError(f"unknown statistic {name!r}")
        with self._lock:
            self._counts[name] += by

    def record_refinements(self, count: int, seconds: float) -> None:
        with self._lock:
            self._counts["refinements"] += count
            self._refine_seconds += seconds

    def mean_refine_seconds(self) -> float:
        with self._lock:
            count = self._counts["refinements"]
            return self._refine_seconds / count if count else 0.0

    @contextmanager
    def mode_timer(self, mode: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            with self._lock:
                self._mode_seconds[mode] = self._mode_seconds.get(mode, 0.0) + elapsed

    def elapsed(self) -> float:
        """Seconds since the tracker was created."""
        return time.perf_counter() - self._start

    def get(self, name: str) -> int:
        with self._lock:
            return self._counts[name]

    def snapshot(self) -> SolverStatistics:
        with self._lock:
            return SolverStatistics(
                **self._counts,
                refine_seconds=self._refine_seconds,
                mode_seconds={mode: round(s, 6) for mode, s in self._mode_seconds.items()},
            )
