"""
Exception hierarchy for symprobe.

Library code raises these; only the CLI turns them into exit codes.
"""

from typing import Optional


class SymprobeError(Exception):
    """Base class for all symprobe errors."""
    pass


class ContractViolation(SymprobeError):
    """A documented precondition of an operation was broken by the caller."""
    pass


class GraphParseError(SymprobeError):
    """Malformed graph input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        self.reason = message
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class VertexRangeError(GraphParseError):
    """A vertex id outside of [1, n]."""
    pass


class PermutationFormatError(SymprobeError):
    """Malformed cycle notation."""
    pass


class OracleRefused(SymprobeError):
    """Input exceeds what the brute-force oracle is willing to enumerate."""
    pass


class BfsBudgetExceeded(SymprobeError):
    """Breadth-first expansion would exceed the configured memory cap."""

    def __init__(self, level: int, estimated_bytes: int, cap_bytes: int):
        self.level = level
        self.estimated_bytes = estimated_bytes
        self.cap_bytes = cap_bytes
        super().__init__(
            f"BFS level {level + 1} needs ~{estimated_bytes} bytes (cap {cap_bytes})"
        )
