"""Color refinement with trace invariants."""

from .refiner import (
    RefinementOutcome,
    RefinementResult,
    Refiner,
    individualize,
    individualize_in_place,
    refine,
    refiner_for,
)
from .trace import Trace, TraceStatus, deviation_value

__all__ = [
    "RefinementOutcome",
    "RefinementResult",
    "Refiner",
    "Trace",
    "TraceStatus",
    "deviation_value",
    "individualize",
    "individualize_in_place",
    "refine",
    "refiner_for",
]
