"""
Refinement traces: the append-only invariant stream recorded while refining.

A trace is one segment of the stream belonging to a root-to-node path. Segments
chain through ``offset`` (number of tokens before this segment) and ``digest``
(running 64-bit hash of every token since the root), so a child never needs the
tokens of its ancestors.
"""

from __future__ import annotations

from enum import Enum
from typing import List, Optional, Sequence, Tuple

from ..errors import ContractViolation

MASK64 = (1 << 64) - 1
DIGEST_SEED = 0x243F6A8885A308D3

TAG_SPLIT = 0x5EED_0001
TAG_INDIVIDUALIZE = 0x5EED_0002
TAG_END = 0x5EED_0003

DEFAULT_EXTENSION_BUDGET = 5


def mix64(h: int, x: int) -> int:
    """One multiply-xor mixing round over 64-bit words."""
    h = (h ^ (x & MASK64)) * 0x9E3779B97F4A7C15 & MASK64
    h ^= h >> 29
    h = h * 0xBF58476D1CE4E5B9 & MASK64
    return h ^ (h >> 32)


def hash_words(tag: int, words: Sequence[int]) -> int:
    h = mix64(DIGEST_SEED, tag)
    for word in words:
        h = mix64(h, word)
    return h


class TraceStatus(str, Enum):
    MATCHING = "matching"
    DEVIATED = "deviated"


class Trace:
    """
    Token stream with optional position-wise comparison against a reference.

    In compare mode the first mismatching token fixes the deviation position.
    The deviation value starts from that token and absorbs the tokens of
    ``extension_budget`` further split events; after that the refiner is asked
    to stop (``wants_early_out``).
    """

    __slots__ = (
        "tokens",
        "offset",
        "digest",
        "reference",
        "extension_budget",
        "status",
        "_deviation_position",
        "_deviation_value",
        "_events_left",
        "_sealed",
    )

    def __init__(
        self,
        reference: Optional[Sequence[int]] = None,
        *,
        offset: int = 0,
        digest: int = DIGEST_SEED,
        extension_budget: int = DEFAULT_EXTENSION_BUDGET,
    ):
        if extension_budget < 0:
            raise ContractViolation("extension budget must be non-negative")
        self.tokens: List[int] = []
        self.offset = offset
        self.digest = digest
        self.reference = reference
        self.extension_budget = extension_budget
        self.status = TraceStatus.MATCHING
        self._deviation_position: Optional[int] = None
        self._deviation_value = 0
        self._events_left = 0
        self._sealed = False

    @property
    def compare_mode(self) -> bool:
        return self.reference is not None

    @property
    def position(self) -> int:
        """Absolute index of the next token."""
        return self.offset + len(self.tokens)

    @property
    def deviated(self) -> bool:
        return self.status is TraceStatus.DEVIATED

    @classmethod
    def concatenate(cls, segments: Sequence["Trace"]) -> "Trace":
        """
        One root-anchored trace holding the tokens of a chain of segments.

        Raises:
            ContractViolation: if the segments do not chain from the root
        """
        joined = cls()
        for segment in segments:
            if segment.offset != joined.position:
                raise ContractViolation("trace segments do not form a chain")
            joined.tokens.extend(segment.tokens)
            joined.digest = segment.digest
        return joined

    def fork(self, reference: Optional[Sequence[int]] = None) -> "Trace":
        """A fresh segment continuing this one (for a child node)."""
        return Trace(
            reference,
            offset=self.position,
            digest=self.digest,
            extension_budget=self.extension_budget,
        )

    def record(self, token: int) -> None:
        position = self.position
        self.tokens.append(token)
        self.digest = mix64(self.digest, token)
        if self.reference is None:
            return
        if self.status is TraceStatus.MATCHING:
            expected = self.reference[position] if position < len(self.reference) else None
            if expected != token:
                self.status = TraceStatus.DEVIATED
                self._deviation_position = position
                self._deviation_value = mix64(DIGEST_SEED, token)
                self._events_left = self.extension_budget
        elif not self._sealed:
            self._deviation_value = mix64(self._deviation_value, token)

    def record_split(self, cell: int, fragments: int) -> None:
        """Record one cell-split event (two tokens)."""
        counts_against_budget = self.deviated and not self._sealed
        self.record(mix64(TAG_SPLIT, cell))
        self.record(fragments)
        if counts_against_budget:
            self._events_left -= 1

    def record_individualization(self, cell: int, remainder: int) -> None:
        self.record(hash_words(TAG_INDIVIDUALIZE, (cell, remainder)))

    def record_end(self, cell_count: int) -> None:
        self.record(hash_words(TAG_END, (cell_count,)))

    def wants_early_out(self) -> bool:
        return self.deviated and self._events_left <= 0

    def seal(self) -> None:
        """Freeze the deviation value; later tokens no longer change it."""
        self._sealed = True

    def deviation(self) -> Optional[Tuple[int, int]]:
        """
        The ``(position, value)`` pair of the first deviation, or None.

        Raises:
            ContractViolation: if the trace was not produced in compare mode
        """
        if self.reference is None:
            raise ContractViolation("deviation value requires a trace in compare mode")
        if self._deviation_position is None:
            return None
        return self._deviation_position, self._deviation_value

    def __repr__(self) -> str:
        return (
            f"Trace(offset={self.offset}, tokens={len(self.tokens)}, "
            f"status={self.status.value}, digest={self.digest:#018x})"
        )


def deviation_value(trace: Trace) -> Optional[Tuple[int, int]]:
    """Dev(trace): first deviating position and its accumulated value, or None (⊥)."""
    return trace.deviation()
