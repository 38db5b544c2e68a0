"""
Input validation utilities for command-line flags.
"""

from typing import List

from pydantic import BaseModel, Field, ValidationError, field_validator


class ThreadsList(BaseModel):
    """Validated ``--threads-list`` value."""
    threads: List[int] = Field(..., min_length=1)

    @field_validator("threads")
    @classmethod
    def validate_counts(cls, v: List[int]) -> List[int]:
        if any(t < 1 for t in v):
            raise ValueError("thread counts must be positive")
        if len(set(v)) != len(v):
            raise ValueError("thread counts must be distinct")
        if 1 not in v:
            raise ValueError("thread counts must include 1")
        return v


def parse_threads_list(text: str) -> List[int]:
    """
    Parse a comma-separated list of thread counts such as ``1,2,4,8``.

    Raises:
        ValueError: If the list is empty or holds a non-positive or non-integer entry,
            or lacks the single-thread reference
    """
    parts = [part.strip() for part in text.split(",") if part.strip()]
    try:
        return ThreadsList(threads=parts).threads
    except ValidationError as e:
        errors = "; ".join(err["msg"] for err in e.errors())
        raise ValueError(f"Invalid threads list {text!r}: {errors}")


def describe_validation_error(error: ValidationError) -> str:
    """One line per invalid field, ``field: message``."""
    return "; ".join(
        f"{'.'.join(str(loc) for loc in err['loc']) or 'value'}: {err['msg']}" for err in error.errors()
    )
