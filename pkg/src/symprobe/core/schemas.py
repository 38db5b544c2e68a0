"""
Pydantic schemas for solver state and results.
"""

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..graph.permutation import Permutation
from ..utils.stats_tracker import SolverStatistics


class SolverMode(str, Enum):
    """Operation modes of the solver."""
    BASE_ALIGNED = "base_aligned"
    BFS = "bfs"
    LEVEL_SEARCH = "level_search"


class Termination(str, Enum):
    """How a solve ended."""
    DETERMINISTIC = "deterministic"
    PROBABILISTIC = "probabilistic"
    TIMEOUT = "timeout"


class AbortState(BaseModel):
    """
    Counters of the probabilistic abort criterion.

    ``c`` counts consecutive successful uniform sifts, ``d`` is the current
    threshold and ``tests_completed`` the number of tests that ended
    unsuccessfully after partial progress (so ``d - initial_d`` equals it).
    """
    c: int = Field(default=0, ge=0)
    d: int = Field(..., ge=1)
    initial_d: int = Field(..., ge=1)
    error_bound: float = Field(..., gt=0.0, lt=1.0)
    tests_completed: int = Field(default=0, ge=0)
    uniform_samples: int = Field(default=0, ge=0)

    @property
    def threshold_exceeded(self) -> bool:
        return self.c > self.d


class SolverResult(BaseModel):
    """Outcome of ``solve``: certified generators and the group order."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    generators: List[Permutation] = Field(default_factory=list)
    group_order: int = Field(default=1, ge=1)
    base: List[int] = Field(default_factory=list, description="Target base, 0-based")
    termination: Termination
    error_bound: float
    seed: int
    threads: int
    abort: Optional[AbortState] = None
    statistics: SolverStatistics = Field(default_factory=SolverStatistics)
    elapsed_seconds: float = 0.0

    @property
    def deterministic(self) -> bool:
        return self.termination is Termination.DETERMINISTIC
