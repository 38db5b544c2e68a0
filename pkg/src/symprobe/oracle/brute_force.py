"""
Brute-force automorphism enumeration for small graphs.

Shares nothing with the solver beyond graph primitives. The exhaustive mode
tests every permutation; the pruned mode backtracks over partial maps that
respect colors, degrees and adjacency to already-mapped vertices. Both check
every candidate with ``is_automorphism``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, List, Optional, Tuple

from ..errors import OracleRefused
from ..graph.colored_graph import ColoredGraph
from ..graph.permutation import Permutation

MAX_ORACLE_VERTICES = 10


@dataclass(frozen=True)
class OracleGroup:
    """All automorphisms of a graph, listed explicitly."""
    elements: Tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, phi: object) -> bool:
        return phi in set(self.elements)

    def is_closed(self) -> bool:
        """Closed under products and inverses, and contains the identity."""
        members = set(self.elements)
        if not self.elements:
            return False
        if Permutation.identity(self.elements[0].degree) not in members:
            return False
        return all(g.inverse() in members for g in self.elements) and all(
            g * h in members for g in self.elements for h in self.elements
        )


def _exhaustive(graph: ColoredGraph) -> Iterator[Permutation]:
    for image in permutations(range(graph.n)):
        yield Permutation(image, check=False)


def _backtrack(graph: ColoredGraph) -> Iterator[Permutation]:
    n = graph.n
    colors = [int(c) for c in graph.colors]
    degrees = [graph.degree(v) for v in range(n)]
    adjacency = [set(graph.neighbors(v)) for v in range(n)]
    image: List[int] = [-1] * n
    used = [False] * n

    def extend(v: int) -> Iterator[Permutation]:
        if v == n:
            yield Permutation(list(image), check=False)
            return
        for w in range(n):
            if used[w] or colors[w] != colors[v] or degrees[w] != degrees[v]:
                continue
            if any((u in adjacency[v]) != (image[u] in adjacency[w]) for u in range(v)):
                continue
            image[v], used[w] = w, True
            yield from extend(v + 1)
            image[v], used[w] = -1, False

    yield from extend(0)


def brute_force_automorphisms(graph: ColoredGraph, exhaustive: bool = False) -> OracleGroup:
    """
    Every automorphism of ``graph``.

    Args:
        graph: graph with at most MAX_ORACLE_VERTICES vertices
        exhaustive: test all n! permutations instead of backtracking

    Raises:
        OracleRefused: if the graph is too large
    """
    if graph.n > MAX_ORACLE_VERTICES:
        raise OracleRefused(f"oracle handles at most {MAX_ORACLE_VERTICES} vertices, got {graph.n}")
    candidates = _exhaustive(graph) if exhaustive else _backtrack(graph)
    return OracleGroup(tuple(phi for phi in candidates if graph.is_automorphism(phi)))


def group_order(graph: ColoredGraph, exhaustive: bool = False) -> int:
    return brute_force_automorphisms(graph, exhaustive).order
