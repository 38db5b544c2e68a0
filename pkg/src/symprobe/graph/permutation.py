"""
Permutations of {0, ..., n-1}.

Products are read left to right: ``(p * q)(v) == q(p(v))``, so ``phi * t.inverse()``
first applies ``phi`` and then undoes ``t``. Externally (cycle notation, DIMACS)
points are 1-based; internally they are 0-based.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContractViolation, PermutationFormatError

_ELEMENT_SEP_RE = r" *[, ] *"
_CYCLE_RE = rf"\(( *\d+({_ELEMENT_SEP_RE}\d+)* *)?\) *"


class Permutation:
    """
    Immutable bijection on {0, ..., n-1} backed by a read-only numpy image array.

    ``image[v]`` is the image of ``v``. Instances hash and compare by their image,
    so they can be stored in sets and used as dict keys.
    """

    __slots__ = ("_image", "_hash")

    def __init__(self, image: Sequence[int] | np.ndarray, *, check: bool = True):
        array = np.array(image, dtype=np.int64)
        if array.ndim != 1:
            raise ContractViolation("permutation image must be one-dimensional")
        if check and not np.array_equal(np.sort(array), np.arange(array.size)):
            raise ContractViolation("image is not a bijection on {0..n-1}")
        array.flags.writeable = False
        self._image = array
        self._hash: Optional[int] = None

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(n, dtype=np.int64), check=False)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        """Build a permutation from 0-based cycles; unlisted points are fixed."""
        image = np.arange(n, dtype=np.int64)
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if point < 0 or point >= n:
                    raise ContractViolation(f"point {point} outside of 0..{n - 1}")
                if point in seen:
                    raise ContractViolation(f"point {point} appears twice")
                seen.add(point)
            for a, b in zip(cycle, cycle[1:]):
                image[a] = b
            if cycle:
                image[cycle[-1]] = cycle[0]
        return cls(image, check=False)

    @classmethod
    def parse_cycles(cls, text: str, n: int) -> "Permutation":
        """
        Parse 1-based cycle notation such as ``(1 2 3)(4 5)`` or ``()``.

        Raises:
            PermutationFormatError: on anything that is not a product of
                disjoint cycles over 1..n
        """
        stripped = re.sub(r"\s", " ", text).strip()
        if not stripped:
            raise PermutationFormatError("empty permutation")
        cycles: List[List[int]] = []
        for match in re.finditer(_CYCLE_RE + r"|.", stripped):
            token = match.group().strip()
            if len(token) == 1:
                raise PermutationFormatError(f"could not parse permutation {text!r}")
            body = token[1:-1].strip()
            if not body:
                continue
            cycles.append([int(x) - 1 for x in re.split(_ELEMENT_SEP_RE, body)])
        try:
            return cls.from_cycles(n, cycles)
        except ContractViolation as e:
            raise PermutationFormatError(f"invalid permutation {text!r}: {e}") from e

    @property
    def image(self) -> np.ndarray:
        return self._image

    @property
    def degree(self) -> int:
        return int(self._image.size)

    def __call__(self, point: int) -> int:
        return int(self._image[point])

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        return Permutation(other._image[self._image], check=False)

    def inverse(self) -> "Permutation":
        inverse = np.empty_like(self._image)
        inverse[self._image] = np.arange(self._image.size, dtype=np.int64)
        return Permutation(inverse, check=False)

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._image, np.arange(self._image.size)))

    def fixes(self, points: Iterable[int]) -> bool:
        """Whether every point in ``points`` is a fixed point."""
        return all(self._image[p] == p for p in points)

    def support(self) -> List[int]:
        return np.flatnonzero(self._image != np.arange(self._image.size)).tolist()

    def cycles(self) -> List[Tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its smallest point."""
        seen = np.zeros(self._image.size, dtype=bool)
        out: List[Tuple[int, ...]] = []
        for start in range(self._image.size):
            if seen[start] or self._image[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            point = int(self._image[start])
            while point != start:
                seen[point] = True
                cycle.append(point)
                point = int(self._image[point])
            out.append(tuple(cycle))
        return out

    def to_cycles(self) -> str:
        """1-based cycle notation; the identity is ``()``."""
        parts = ["(" + " ".join(str(p + 1) for p in cycle) + ")" for cycle in self.cycles()]
        return "".join(parts) if parts else "()"

    def __iter__(self) -> Iterator[int]:
        return iter(self._image.tolist())

    def __len__(self) -> int:
        return self.degree

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self._image, other._image))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._image.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycles()}, n={self.degree})"


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """A uniformly random permutation of {0..n-1} drawn from ``rng``."""
    return Permutation(rng.permutation(n), check=False)


def compose_all(perms: Iterable[Permutation], n: int) -> Permutation:
    """Left-to-right product of ``perms`` (identity for an empty iterable)."""
    result = Permutation.identity(n)
    for perm in perms:
        result = result * perm
    return result


def parse_generator_lines(text: str, n: int) -> List[Tuple[int, Permutation]]:
    """
    Parse a generator file: one cycle-notation permutation per line.

    Blank lines and ``#`` comments are skipped.

    Returns:
        ``(line number, permutation)`` pairs

    Raises:
        PermutationFormatError: on a malformed line (message names the line)
    """
    out: List[Tuple[int, Permutation]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append((line_no, Permutation.parse_cycles(line, n)))
        except PermutationFormatError as e:
            raise PermutationFormatError(f"line {line_no}: {e}") from e
    return out


def format_generators(perms: Iterable[Permutation]) -> str:
    return "".join(perm.to_cycles() + "\n" for perm in perms)
