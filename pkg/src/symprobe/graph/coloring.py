"""
Ordered vertex partitions (colorings).

A coloring lays vertices out cell by cell in ``order``. A cell is identified by
the index of its first slot in ``order`` (its *start*), which depends only on the
sizes of the cells before it and therefore never on vertex ids. A discrete
coloring read slot by slot is a permutation ``slot -> vertex``.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterator, List, Sequence

from ..errors import ContractViolation
from .permutation import Permutation


class Coloring:
    """
    Surjective vertex → cell map with explicit, contiguous cell boundaries.

    Attributes:
        order: vertices in cell order
        position: vertex -> slot in ``order``
        cell_of: vertex -> start of its cell
        cell_size: start -> size of the cell starting there (0 elsewhere)
        cell_count: number of cells
    """

    __slots__ = ("order", "position", "cell_of", "cell_size", "cell_count")

    def __init__(
        self,
        order: List[int],
        position: List[int],
        cell_of: List[int],
        cell_size: List[int],
        cell_count: int,
    ):
        self.order = order
        self.position = position
        self.cell_of = cell_of
        self.cell_size = cell_size
        self.cell_count = cell_count

    @classmethod
    def unit(cls, n: int) -> "Coloring":
        return cls.from_colors([0] * n)

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "Coloring":
        """
        Build a coloring whose cells are the color classes, ordered by color value.

        Vertices inside a cell are laid out by ascending id.
        """
        n = len(colors)
        classes: Dict[int, List[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        order: List[int] = []
        cell_of = [0] * n
        cell_size = [0] * n
        for c in sorted(classes):
            start = len(order)
            members = classes[c]
            cell_size[start] = len(members)
            for v in members:
                cell_of[v] = start
            order.extend(members)
        position = [0] * n
        for slot, v in enumerate(order):
            position[v] = slot
        return cls(order, position, cell_of, cell_size, len(classes))

    @property
    def n(self) -> int:
        return len(self.order)

    def copy(self) -> "Coloring":
        return Coloring(
            self.order.copy(),
            self.position.copy(),
            self.cell_of.copy(),
            self.cell_size.copy(),
            self.cell_count,
        )

    def is_discrete(self) -> bool:
        return self.cell_count == len(self.order)

    def cell_starts(self) -> Iterator[int]:
        start = 0
        n = len(self.order)
        while start < n:
            yield start
            start += self.cell_size[start]

    def cell(self, start: int) -> List[int]:
        return self.order[start:start + self.cell_size[start]]

    def cells(self) -> List[List[int]]:
        return [self.cell(start) for start in self.cell_starts()]

    def cell_sets(self) -> List[FrozenSet[int]]:
        return [frozenset(cell) for cell in self.cells()]

    def color_of(self, v: int) -> int:
        """Ordinal index (0-based) of the cell containing ``v``."""
        target = self.cell_of[v]
        for index, start in enumerate(self.cell_starts()):
            if start == target:
                return index
        raise ContractViolation(f"vertex {v} is not covered by the coloring")

    def is_singleton(self, v: int) -> bool:
        return self.cell_size[self.cell_of[v]] == 1

    def as_permutation(self) -> Permutation:
        """The permutation ``slot -> vertex`` of a discrete coloring."""
        if not self.is_discrete():
            raise ContractViolation("only a discrete coloring defines a permutation")
        return Permutation(self.order, check=False)

    def permuted(self, phi: Permutation) -> "Coloring":
        """The image coloring under ``phi``: every vertex ``v`` replaced by ``phi(v)``."""
        image = phi.image
        order = [int(image[v]) for v in self.order]
        n = len(order)
        position = [0] * n
        cell_of = [0] * n
        for v in range(n):
            w = int(image[v])
            position[w] = self.position[v]
            cell_of[w] = self.cell_of[v]
        return Coloring(order, position, cell_of, self.cell_size.copy(), self.cell_count)

    def __repr__(self) -> str:
        cells = " | ".join(" ".join(str(v + 1) for v in sorted(cell)) for cell in self.cells())
        return f"Coloring({cells})"
