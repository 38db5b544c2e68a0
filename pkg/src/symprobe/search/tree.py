"""
The individualization-refinement search tree of one colored graph.

Nodes are created on demand; nothing but the target path is kept. Every
operation is safe to call from several threads at once: refinement scratch is
thread-local and nodes are never mutated after creation (weights excepted,
which only the BFS coordinator touches).
"""

from __future__ import annotations

import threading
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContractViolation
from ..graph.colored_graph import ColoredGraph
from ..graph.permutation import Permutation
from ..refinement.refiner import RefinementResult, individualize_in_place, refiner_for
from ..refinement.trace import DEFAULT_EXTENSION_BUDGET, Trace
from ..utils.logger import get_logger
from .node import LeafRecord, SearchNode, TargetLeaf, TargetPath
from .rng import uniform_below
from .selector import CellSelectorPolicy, select_cell_start

logger = get_logger(__name__)


class SearchTree:
    """
    Lazily explored IR tree of ``graph``.

    Args:
        graph: the colored graph
        selector: cell selector policy
        extension_budget: split events absorbed into a deviation value
    """

    def __init__(
        self,
        graph: ColoredGraph,
        selector: CellSelectorPolicy = CellSelectorPolicy.FIRST_LARGEST,
        extension_budget: int = DEFAULT_EXTENSION_BUDGET,
    ):
        self.graph = graph
        self.selector = selector
        self.extension_budget = extension_budget
        self._root: Optional[SearchNode] = None
        self._root_lock = threading.Lock()

    def root(self) -> SearchNode:
        """The root ε with Ref(G, ε), computed once."""
        if self._root is None:
            with self._root_lock:
                if self._root is None:
                    coloring = self.graph.initial_coloring()
                    trace = Trace(extension_budget=self.extension_budget)
                    refiner_for(self.graph).refine_in_place(coloring, trace)
                    self._root = SearchNode((), coloring, trace)
        return self._root

    def selected_cell(self, node: SearchNode) -> List[int]:
        """Sel at ``node``: vertices of the selected cell, empty at a leaf."""
        start = select_cell_start(node.coloring, self.selector)
        return [] if start is None else node.coloring.cell(start)

    def child(
        self,
        node: SearchNode,
        v: int,
        reference: Optional[Sequence[int]] = None,
    ) -> Tuple[SearchNode, RefinementResult]:
        """
        The child ν·v of ``node``.

        With ``reference`` set the child's trace runs in compare mode and
        refinement stops shortly after the first deviation.

        Raises:
            ContractViolation: if ``v`` is already a singleton at ``node``
        """
        coloring = node.coloring.copy()
        start = individualize_in_place(coloring, v)
        trace = node.trace.fork(reference)
        trace.record_individualization(start, coloring.cell_size[start + 1])
        result = refiner_for(self.graph).refine_in_place(coloring, trace, splitters=(start,))
        child = SearchNode(node.base + (v,), coloring, trace)
        return child, result

    def random_walk(self, rng: np.random.Generator) -> Tuple[LeafRecord, Tuple[int, ...]]:
        """Uniform random root-to-leaf walk."""
        return self.random_walk_from(self.root(), rng)

    def random_walk_from(
        self, node: SearchNode, rng: np.random.Generator
    ) -> Tuple[LeafRecord, Tuple[int, ...]]:
        """
        Random walk to a leaf starting at ``node``.

        Each step individualizes a uniformly chosen vertex of the selected cell.

        Raises:
            ContractViolation: if ``node``'s trace deviated from its reference
        """
        if node.trace.deviated:
            raise ContractViolation("cannot walk from a node whose trace deviated")
        current = node
        while True:
            cell = self.selected_cell(current)
            if not cell:
                break
            current, _ = self.child(current, cell[uniform_below(rng, len(cell))])
        leaf = LeafRecord(current.base, current.coloring.as_permutation(), current.digest)
        return leaf, current.base

    def establish_target(self, rng: np.random.Generator) -> TargetPath:
        """Walk to a random leaf, keeping the whole path as the target."""
        nodes = [self.root()]
        cells: List[List[int]] = []
        while True:
            cell = self.selected_cell(nodes[-1])
            if not cell:
                break
            cells.append(cell)
            child, _ = self.child(nodes[-1], cell[uniform_below(rng, len(cell))])
            nodes.append(child)
        last = nodes[-1]
        trace = Trace.concatenate([node.trace for node in nodes])
        leaf = TargetLeaf(last.base, last.coloring.as_permutation(), last.digest, trace)
        level_ends = [node.trace.position for node in nodes]
        logger.info(
            "Target leaf established",
            depth=len(cells),
            cell_sizes=[len(cell) for cell in cells],
            trace_length=len(trace.tokens),
        )
        return TargetPath(nodes, cells, level_ends, leaf)


def derive_automorphism(
    graph: ColoredGraph, target: LeafRecord, leaf: LeafRecord
) -> Optional[Permutation]:
    """
    The permutation mapping ``leaf`` onto ``target``, if it is an automorphism.

    Returns:
        certified automorphism, or None when certification fails
    """
    phi = leaf.leaf_permutation.inverse() * target.leaf_permutation
    if not graph.is_automorphism(phi):
        return None
    return phi


def random_walk(
    graph: ColoredGraph,
    rng: np.random.Generator,
    selector: CellSelectorPolicy = CellSelectorPolicy.FIRST_LARGEST,
) -> Tuple[LeafRecord, Tuple[int, ...]]:
    """One-off random walk on a fresh tree of ``graph``."""
    return SearchTree(graph, selector).random_walk(rng)
