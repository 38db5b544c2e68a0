"""
Breadth-first advancement of the search tree.

Every surviving node of level k is expanded; children are refined in compare
mode against the target trace and dropped on deviation. A parent whose
children's deviation values disagree with those of the target-path node is
dropped as a whole. Children of one parent that a stored automorphism fixing
the parent maps onto each other are merged into one weighted node.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from ..errors import BfsBudgetExceeded, ContractViolation
from ..search.node import LeafRecord, SearchNode
from ..search.tree import derive_automorphism
from ..utils.logger import get_logger
from .context import SearchContext

logger = get_logger(__name__)

# per node: four vertex-indexed lists of 8-byte slots plus object overhead
BYTES_PER_VERTEX = 4 * 8
NODE_OVERHEAD_BYTES = 512

Deviation = Optional[Tuple[int, int]]


@dataclass
class BfsLevel:
    """
    Surviving nodes of one BFS level.

    Attributes:
        level: depth k of the nodes
        depth: depth of the target leaf
        nodes: surviving nodes, in parent order then vertex order
        target_index: index of the target-path node in ``nodes``
        deviation_set: deviation values of the children of the previous
            level's target-path node (empty for level 0)
    """
    level: int
    depth: int
    nodes: List[SearchNode]
    target_index: int = 0
    deviation_set: FrozenSet[Deviation] = frozenset()
    children_computed: int = 0
    seconds: float = 0.0

    @property
    def width(self) -> int:
        return len(self.nodes)

    @property
    def total_weight(self) -> int:
        return sum(node.external_weight for node in self.nodes)

    @property
    def is_leaf_level(self) -> bool:
        return self.level >= self.depth

    @property
    def target_node(self) -> SearchNode:
        return self.nodes[self.target_index]


@dataclass
class _Expansion:
    parent_index: int
    children: List[SearchNode] = field(default_factory=list)
    deviations: Set[Deviation] = field(default_factory=set)
    computed: int = 0
    pruned_invariant: int = 0
    pruned_deviation: bool = False
    merged: int = 0
    interrupted: bool = False


def initial_level(ctx: SearchContext) -> BfsLevel:
    """Level 0: the root alone."""
    return BfsLevel(0, ctx.target.depth, [ctx.target.nodes[0]])


def estimate_level_bytes(width: int, cell_size: int, n: int) -> int:
    """Upper estimate of the memory held by the next level's nodes."""
    return width * cell_size * (n * BYTES_PER_VERTEX + NODE_OVERHEAD_BYTES)


class _Expander:
    def __init__(self, ctx: SearchContext, level: BfsLevel):
        self.ctx = ctx
        self.level = level
        self.child_level = level.level + 1
        self.target_vertex = ctx.target.base[level.level]
        self.reference = ctx.target.tokens

    def expand(
        self,
        parent_index: int,
        parent: SearchNode,
        deviation_set: Optional[FrozenSet[Deviation]],
    ) -> _Expansion:
        """
        Children of ``parent`` surviving invariant, deviation-set and orbit pruning.

        Args:
            deviation_set: D of the target-path node, or None to collect it
                (when expanding the target-path node itself)
        """
        ctx = self.ctx
        result = _Expansion(parent_index)
        if ctx.expired():
            result.interrupted = True
            return result
        check_deviations = deviation_set is not None and ctx.config.enable_deviation_sets
        survivors: List[Tuple[int, SearchNode]] = []
        for v in sorted(ctx.tree.selected_cell(parent)):
            child, _ = ctx.tree.child(parent, v, self.reference)
            result.computed += 1
            deviation = child.trace.deviation()
            result.deviations.add(deviation)
            if check_deviations and deviation not in deviation_set:
                result.pruned_deviation = True
                return result
            if deviation is None:
                survivors.append((v, child))
            else:
                result.pruned_invariant += 1
        if check_deviations and result.deviations != deviation_set:
            result.pruned_deviation = True
            return result

        if self.child_level == self.level.depth:
            survivors = self._certify_leaves(survivors, result)
        result.children = self._merge(parent, survivors, result, deviation_set is None)
        return result

    def _certify_leaves(
        self, survivors: List[Tuple[int, SearchNode]], result: _Expansion
    ) -> List[Tuple[int, SearchNode]]:
        ctx = self.ctx
        kept: List[Tuple[int, SearchNode]] = []
        for v, child in survivors:
            leaf = LeafRecord(child.base, child.coloring.as_permutation(), child.digest)
            phi = derive_automorphism(ctx.graph, ctx.target.leaf, leaf)
            if phi is None:
                result.pruned_invariant += 1
                continue
            ctx.stats.increment("occurrences")
            ctx.sift(phi, uniform=False)
            kept.append((v, child))
        return kept

    def _merge(
        self,
        parent: SearchNode,
        survivors: List[Tuple[int, SearchNode]],
        result: _Expansion,
        on_target_path: bool,
    ) -> List[SearchNode]:
        ctx = self.ctx
        groups: Dict[int, List[int]] = {}
        if ctx.config.enable_weighted_pruning and len(survivors) > 1:
            groups = self._orbits(parent, [v for v, _ in survivors])
        children: List[SearchNode] = []
        for v, child in survivors:
            members = groups.get(v)
            if members is None:
                child.internal_weight = 1
            else:
                representative = min(members)
                if on_target_path and self.target_vertex in members:
                    representative = self.target_vertex
                if v != representative:
                    continue
                child.internal_weight = len(members)
                result.merged += len(members) - 1
            child.external_weight = child.internal_weight * parent.external_weight
            children.append(child)
        return children

    def _orbits(self, parent: SearchNode, vertices: Sequence[int]) -> Dict[int, List[int]]:
        """Orbits on ``vertices`` of the stored generators fixing the parent's base."""
        generators = [g for g in self.ctx.structure.generators() if g.fixes(parent.base)]
        if not generators:
            return {}
        index = {v: i for i, v in enumerate(vertices)}
        root = list(range(len(vertices)))

        def find(i: int) -> int:
            while root[i] != i:
                root[i] = root[root[i]]
                i = root[i]
            return i

        for g in generators:
            image = g.image
            for v, i in index.items():
                j = index.get(int(image[v]))
                if j is not None:
                    a, b = find(i), find(j)
                    if a != b:
                        root[max(a, b)] = min(a, b)
        classes: Dict[int, List[int]] = {}
        for v, i in index.items():
            classes.setdefault(find(i), []).append(v)
        return {v: members for members in classes.values() for v in members}


def bfs_advance(ctx: SearchContext, level: BfsLevel) -> Optional[BfsLevel]:
    """
    Expand ``level`` into the next one.

    Returns:
        the next level, or None if the time limit expired mid-level

    Raises:
        BfsBudgetExceeded: if the next level would exceed the memory cap
        ContractViolation: if ``level`` is already the leaf level
    """
    if level.is_leaf_level:
        raise ContractViolation("the leaf level has no children")
    config = ctx.config
    k = level.level
    estimate = estimate_level_bytes(level.width, len(ctx.target.cells[k]), ctx.graph.n)
    if estimate > config.bfs_memory_cap_bytes:
        raise BfsBudgetExceeded(k, estimate, config.bfs_memory_cap_bytes)

    started = time.perf_counter()
    expander = _Expander(ctx, level)
    base = expander.expand(level.target_index, level.target_node, None)
    if base.interrupted:
        return None
    deviation_set = frozenset(base.deviations)

    others = [(i, node) for i, node in enumerate(level.nodes) if i != level.target_index]
    chunk_size = max(config.bfs_min_chunk, len(others) // (8 * ctx.pool.threads))

    def expand_chunk(chunk: Sequence[Tuple[int, SearchNode]]) -> List[_Expansion]:
        return [expander.expand(i, node, deviation_set) for i, node in chunk]

    expansions = [base] + ctx.pool.map_chunks(expand_chunk, others, chunk_size)
    if any(e.interrupted for e in expansions):
        return None
    expansions.sort(key=lambda e: e.parent_index)

    nodes: List[SearchNode] = []
    for expansion in expansions:
        nodes.extend(expansion.children)
    target_prefix = ctx.target.base[:k + 1]
    target_index = next(i for i, node in enumerate(nodes) if node.base == target_prefix)

    seconds = time.perf_counter() - started
    computed = sum(e.computed for e in expansions)
    pruned_invariant = sum(e.pruned_invariant for e in expansions)
    pruned_deviation = sum(1 for e in expansions if e.pruned_deviation)
    merged = sum(e.merged for e in expansions)
    stats = ctx.stats
    stats.increment("nodes_expanded", computed)
    stats.increment("nodes_pruned_invariant", pruned_invariant)
    stats.increment("nodes_pruned_deviation", pruned_deviation)
    stats.increment("nodes_merged", merged)
    stats.increment("bfs_levels_completed")
    stats.record_refinements(computed, seconds)

    next_level = BfsLevel(
        level=k + 1,
        depth=level.depth,
        nodes=nodes,
        target_index=target_index,
        deviation_set=deviation_set,
        children_computed=computed,
        seconds=seconds,
    )
    logger.info(
        "BFS level completed",
        level=next_level.level,
        width=next_level.width,
        total_weight=next_level.total_weight,
        pruned_invariant=pruned_invariant,
        pruned_deviation=pruned_deviation,
        merged=merged,
    )
    return next_level
