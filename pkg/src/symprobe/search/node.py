"""
Search-tree records: nodes, leaves and the target path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..graph.coloring import Coloring
from ..graph.permutation import Permutation
from ..refinement.trace import Trace


@dataclass(slots=True)
class SearchNode:
    """
    A node ν of the IR tree: the individualized base plus its refined coloring.

    Attributes:
        base: individualized vertices, in order
        coloring: Ref(G, ν)
        trace: trace segment recorded while creating this node
        internal_weight: w̄(ν), the number of nodes this one stands for
        external_weight: w(ν) = w̄(ν) · w(parent)
    """
    base: Tuple[int, ...]
    coloring: Coloring
    trace: Trace
    internal_weight: int = 1
    external_weight: int = 1

    @property
    def level(self) -> int:
        return len(self.base)

    @property
    def digest(self) -> int:
        return self.trace.digest


@dataclass(frozen=True)
class LeafRecord:
    """A leaf reduced to what is needed to compare it: base, permutation, digest."""
    base: Tuple[int, ...]
    leaf_permutation: Permutation
    digest: int


@dataclass(frozen=True)
class TargetLeaf(LeafRecord):
    """The fixed leaf τ every other leaf is compared against."""
    trace: Trace = field(default_factory=Trace)


@dataclass
class TargetPath:
    """
    The root-to-target path τ'_0 … τ'_r.

    ``cells[i]`` is the cell selected at ``nodes[i]`` (vertices in coloring
    order) and ``level_ends[i]`` the trace position right after ``nodes[i]``.
    """
    nodes: List[SearchNode]
    cells: List[List[int]]
    level_ends: List[int]
    leaf: TargetLeaf

    @property
    def base(self) -> Tuple[int, ...]:
        return self.leaf.base

    @property
    def depth(self) -> int:
        return len(self.leaf.base)

    @property
    def tokens(self) -> List[int]:
        return self.leaf.trace.tokens

    def cell_sizes(self) -> List[int]:
        return [len(cell) for cell in self.cells]

    def node(self, level: int) -> Optional[SearchNode]:
        return self.nodes[level] if 0 <= level < len(self.nodes) else None
