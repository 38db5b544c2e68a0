"""
Solver configuration with environment variable support and validation.
"""

import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .search.selector import CellSelectorPolicy

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _default_threads() -> int:
    return os.cpu_count() or 1


class SolverConfig(BaseSettings):
    """
    Options of one ``solve`` call.

    All settings can be overridden via environment variables with SYMPROBE_ prefix.
    Example: SYMPROBE_ERROR_BOUND=0.05
    """

    # Correctness
    error_bound: float = Field(
        default=0.01,
        description="Upper bound ε on the probability of reporting a proper subgroup",
        gt=0.0,
        lt=1.0,
    )
    seed: Optional[int] = Field(
        default=None,
        description="Global RNG seed (drawn from OS entropy when unset)",
        ge=0,
        le=(1 << 64) - 1,
    )

    # Parallelism
    threads: int = Field(
        default_factory=_default_threads,
        description="Worker threads",
        ge=1,
        le=1024,
    )

    # Search tree
    cell_selector: CellSelectorPolicy = Field(
        default=CellSelectorPolicy.FIRST_LARGEST,
        description="Cell selector policy",
    )
    deviation_extension: int = Field(
        default=5,
        description="Split events absorbed into a trace deviation value",
        ge=0,
        le=1000,
    )
    extra_target_cap: int = Field(
        default=8,
        description="Additional target leaves kept by level search",
        ge=0,
        le=1024,
    )

    # Modes
    enable_base_aligned: bool = Field(default=True, description="Run base-aligned search first")
    enable_deviation_sets: bool = Field(default=True, description="Prune BFS parents by deviation sets")
    enable_weighted_pruning: bool = Field(default=True, description="Merge BFS children by known automorphisms")
    hard_walk_factor: int = Field(
        default=3,
        description="A base point is hard after factor·|cell| walks without orbit growth",
        ge=1,
        le=1000,
    )
    bfs_cost_factor: float = Field(
        default=64.0,
        description="Leave BFS when the next level is estimated to cost this many times the work so far",
        gt=0.0,
    )
    bfs_memory_cap_bytes: int = Field(
        default=2 * 1024**3,
        description="Memory cap for the nodes of one BFS level",
        ge=1,
    )
    bfs_min_chunk: int = Field(default=64, description="Minimum BFS chunk size", ge=1)
    min_level_walks: int = Field(
        default=16,
        description="Level-search walks before the success rate is judged",
        ge=1,
    )
    time_limit_seconds: Optional[float] = Field(
        default=None,
        description="Wall-clock budget of one solve",
        gt=0.0,
    )

    # Observability
    log_level: str = Field(default="WARNING", description="Logging level (DEBUG, INFO, WARNING, ERROR)")
    json_logs: bool = Field(default=False, description="Render log events as JSON")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SYMPROBE_",
        case_sensitive=False,
        extra="ignore",
    )

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.upper()
        if level not in _LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(_LOG_LEVELS)}")
        return level

    def initial_threshold(self) -> int:
        """d₁ = ⌈−log₂(ε/2)⌉, the smallest d with ε·2^d ≥ 2."""
        return initial_threshold(self.error_bound)


def initial_threshold(error_bound: float) -> int:
    """⌈−log₂(ε/2)⌉ computed exactly on the binary value of ``error_bound``."""
    eps = Fraction(error_bound)
    d = 0
    while eps * (1 << d) < 2:
        d += 1
    return d


def load_config(env_file: Optional[Path] = None, **overrides) -> SolverConfig:
    """
    Load configuration from environment and .env file.

    Args:
        env_file: Optional path to .env file (defaults to .env in current directory)
        **overrides: explicit values taking precedence over the environment

    Raises:
        ValidationError: If a value is out of range
    """
    if env_file and env_file.exists():
        return SolverConfig(_env_file=str(env_file), **overrides)
    return SolverConfig(**overrides)
