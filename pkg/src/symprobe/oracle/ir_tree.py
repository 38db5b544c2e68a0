"""
Exhaustive construction of the unpruned search tree for small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from ..errors import OracleRefused
from ..graph.colored_graph import ColoredGraph
from ..search.node import LeafRecord, SearchNode
from ..search.selector import CellSelectorPolicy
from ..search.tree import SearchTree, derive_automorphism

MAX_TREE_NODES = 10**6


@dataclass
class IrTree:
    """
    The full search tree.

    Attributes:
        levels: ``levels[k]`` holds every node with a base of length k
        leaves: every leaf, in depth-first vertex order
        leaf_classes: indices into ``leaves``, one list per equivalence class
    """
    levels: List[List[SearchNode]] = field(default_factory=list)
    leaves: List[LeafRecord] = field(default_factory=list)
    leaf_classes: List[List[int]] = field(default_factory=list)

    @property
    def node_count(self) -> int:
        return sum(len(level) for level in self.levels)

    def class_of(self, leaf_index: int) -> List[int]:
        for members in self.leaf_classes:
            if leaf_index in members:
                return members
        raise KeyError(leaf_index)

    def count_matching(self, level: int, digest: int) -> int:
        """Level-``level`` nodes whose trace digest equals ``digest``."""
        if level >= len(self.levels):
            return 0
        return sum(1 for node in self.levels[level] if node.digest == digest)


def enumerate_ir_tree(
    graph: ColoredGraph,
    selector: CellSelectorPolicy = CellSelectorPolicy.FIRST_LARGEST,
    max_nodes: int = MAX_TREE_NODES,
) -> IrTree:
    """
    Build the whole tree and group its leaves by equivalence.

    Two leaves are equivalent when the permutation between them is an
    automorphism.

    Raises:
        OracleRefused: if the tree has more than ``max_nodes`` nodes
    """
    tree = SearchTree(graph, selector)
    result = IrTree(levels=[[tree.root()]])
    count = 1
    frontier = [tree.root()]
    while frontier:
        next_frontier: List[SearchNode] = []
        for node in frontier:
            cell = tree.selected_cell(node)
            if not cell:
                result.leaves.append(
                    LeafRecord(node.base, node.coloring.as_permutation(), node.digest)
                )
                continue
            for v in sorted(cell):
                count += 1
                if count > max_nodes:
                    raise OracleRefused(f"search tree exceeds {max_nodes} nodes")
                child, _ = tree.child(node, v)
                next_frontier.append(child)
        if next_frontier:
            result.levels.append(next_frontier)
        frontier = next_frontier

    by_digest: Dict[int, List[List[int]]] = {}
    for index, leaf in enumerate(result.leaves):
        classes = by_digest.setdefault(leaf.digest, [])
        for members in classes:
            if derive_automorphism(graph, result.leaves[members[0]], leaf) is not None:
                members.append(index)
                break
        else:
            classes.append([index])
    result.leaf_classes = [members for classes in by_digest.values() for members in classes]
    return result
