"""
Schreier structure: base, strong generators and transversal tables, with
thread-safe sifting.

Lock order is level lock, then generator lock; at most one level lock is held
at a time. Lookups read the dense per-level tables without locking. Entries
are installed once and never replaced.
"""

from __future__ import annotations

import threading
from math import prod
from typing import List, Optional, Sequence, Tuple

from ..errors import ContractViolation
from ..graph.permutation import Permutation
from ..utils.logger import get_logger

logger = get_logger(__name__)

_Entry = Tuple[Permutation, Permutation]


class SchreierStructure:
    """
    Group-membership engine for a fixed base.

    ``(T_i)_b`` maps ``β_i`` to ``b`` and fixes ``β_1 … β_{i-1}``. The identity
    sits at key ``β_i`` on every level from construction on.

    Args:
        base: base points β_1 … β_r (0-based, distinct, non-empty)
        n: degree of the permutations to be sifted
    """

    def __init__(self, base: Sequence[int], n: int):
        base = tuple(int(b) for b in base)
        if not base:
            raise ContractViolation("a Schreier structure needs a non-empty base")
        if len(set(base)) != len(base):
            raise ContractViolation(f"duplicate base points in {[b + 1 for b in base]}")
        if any(not 0 <= b < n for b in base):
            raise ContractViolation("base point out of range")
        self.base: Tuple[int, ...] = base
        self.n = n
        identity = Permutation.identity(n)
        self._tables: List[List[Optional[_Entry]]] = []
        for b in base:
            table: List[Optional[_Entry]] = [None] * n
            table[b] = (identity, identity)
            self._tables.append(table)
        self._sizes: List[int] = [1] * len(base)
        self._generators: List[Permutation] = []
        self._level_locks = [threading.Lock() for _ in base]
        self._generator_lock = threading.Lock()

    @property
    def depth(self) -> int:
        return len(self.base)

    def sift(self, phi: Permutation) -> bool:
        """
        Sift a certified automorphism through the structure.

        Returns:
            True if ``phi`` was already represented (nothing changed),
            False if its residue was added as a new generator

        Raises:
            ContractViolation: if a residue fixing the whole base is not the
                identity (``phi`` was not an automorphism with this base)
        """
        if phi.degree != self.n:
            raise ContractViolation(f"permutation of degree {phi.degree} sifted into degree {self.n}")
        level = 0
        while level < self.depth:
            b = phi(self.base[level])
            entry = self._tables[level][b]
            if entry is None:
                with self._level_locks[level]:
                    entry = self._tables[level][b]
                    if entry is None:
                        self._install(level, b, phi)
                        return False
                # installed concurrently: continue with the fresh entry
            phi = phi * entry[1]
            level += 1
        if not phi.is_identity():
            raise ContractViolation("residue fixes the base but is not the identity")
        return True

    def _install(self, level: int, b: int, phi: Permutation) -> None:
        # caller holds the level lock
        with self._generator_lock:
            self._generators.append(phi)
            self._tables[level][b] = (phi, phi.inverse())
            self._sizes[level] += 1
        logger.debug("Generator added", level=level, image=b + 1, support=len(phi.support()))

    def group_order(self) -> int:
        """∏ |T_i| over all levels."""
        with self._generator_lock:
            return prod(self._sizes)

    def generators(self) -> List[Permutation]:
        """Snapshot of the generator list S."""
        with self._generator_lock:
            return list(self._generators)

    def level_sizes(self) -> List[int]:
        with self._generator_lock:
            return list(self._sizes)

    def orbit(self, level: int) -> List[int]:
        """Keys present in ``T_level``: the known part of the orbit of ``β_level``."""
        return [b for b, entry in enumerate(self._tables[level]) if entry is not None]

    def transversal(self, level: int, b: int) -> Optional[Permutation]:
        entry = self._tables[level][b]
        return None if entry is None else entry[0]

    def __repr__(self) -> str:
        return (
            f"SchreierStructure(base={[b + 1 for b in self.base]}, "
            f"sizes={self._sizes}, generators={len(self._generators)})"
        )


def new_structure(base: Sequence[int], n: int) -> SchreierStructure:
    """Trivial transversal table relative to ``base``."""
    return SchreierStructure(base, n)
