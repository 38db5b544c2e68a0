"""
Immutable undirected vertex-colored graphs and automorphism certification.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContractViolation
from .coloring import Coloring
from .permutation import Permutation

if TYPE_CHECKING:
    import networkx as nx


class ColoredGraph:
    """
    Undirected simple graph on {0..n-1} with an initial vertex coloring.

    Adjacency is kept as a CSR pair (``offsets``, ``targets``) with sorted,
    duplicate-free neighbor lists; ``adjacency`` mirrors it as tuples for the
    pure-Python refinement loops. Colors are compacted to 0..k-1 preserving the
    order of the input color values. Instances are immutable and can be shared
    between threads.
    """

    __slots__ = (
        "n",
        "offsets",
        "targets",
        "adjacency",
        "colors",
        "_edge_codes",
    )

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int]],
        colors: Optional[Sequence[int]] = None,
    ):
        if n < 0:
            raise ContractViolation("vertex count must be non-negative")
        neighbor_sets: List[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractViolation(f"edge ({u}, {v}) outside of 0..{n - 1}")
            if u == v:
                raise ContractViolation(f"self-loop at vertex {u}")
            neighbor_sets[u].add(v)
            neighbor_sets[v].add(u)

        self.n = n
        self.adjacency: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(sorted(neighbors)) for neighbors in neighbor_sets
        )
        degrees = np.fromiter((len(a) for a in self.adjacency), dtype=np.int64, count=n)
        self.offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=self.offsets[1:])
        self.targets = np.fromiter(
            (w for neighbors in self.adjacency for w in neighbors),
            dtype=np.int64,
            count=int(self.offsets[-1]),
        )

        if colors is None:
            compact = np.zeros(n, dtype=np.int64)
        else:
            if len(colors) != n:
                raise ContractViolation("one color per vertex is required")
            _, compact = np.unique(np.asarray(colors, dtype=np.int64), return_inverse=True)
        self.colors = compact.astype(np.int64)

        sources = np.repeat(np.arange(n, dtype=np.int64), degrees)
        self._edge_codes = np.sort(sources * n + self.targets)

        for array in (self.offsets, self.targets, self.colors, self._edge_codes):
            array.flags.writeable = False

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        colors: Optional[Sequence[int]] = None,
    ) -> "ColoredGraph":
        return cls(n, edges, colors)

    @classmethod
    def from_networkx(cls, graph: "nx.Graph", color_attr: Optional[str] = None) -> "ColoredGraph":
        """
        Convert a networkx graph; nodes are numbered in ``graph.nodes`` order.

        Args:
            graph: undirected networkx graph without self-loops
            color_attr: optional node attribute holding integer colors
        """
        index = {node: i for i, node in enumerate(graph.nodes)}
        edges = [(index[u], index[v]) for u, v in graph.edges if u != v]
        colors = None
        if color_attr is not None:
            colors = [int(graph.nodes[node].get(color_attr, 0)) for node in graph.nodes]
        return cls(len(index), edges, colors)

    @property
    def edge_count(self) -> int:
        return int(self.targets.size) // 2

    @property
    def color_count(self) -> int:
        return int(self.colors.max()) + 1 if self.n else 0

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        lo, hi = int(self.offsets[u]), int(self.offsets[u + 1])
        i = int(np.searchsorted(self.targets[lo:hi], v))
        return i < hi - lo and int(self.targets[lo + i]) == v

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Each edge once, as ``(u, v)`` with ``u < v``."""
        for u, neighbors in enumerate(self.adjacency):
            for v in neighbors:
                if u < v:
                    yield u, v

    def initial_coloring(self) -> Coloring:
        return Coloring.from_colors(self.colors.tolist())

    def is_automorphism(self, phi: Permutation) -> bool:
        """
        Whether ``phi`` maps edges to edges, non-edges to non-edges and every
        vertex into its own initial color class.
        """
        if phi.degree != self.n:
            return False
        image = phi.image
        if not np.array_equal(self.colors[image], self.colors):
            return False
        sources = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.offsets))
        mapped = np.sort(image[sources] * self.n + image[self.targets])
        return bool(np.array_equal(mapped, self._edge_codes))

    def permuted(self, phi: Permutation) -> "ColoredGraph":
        """G^phi: vertex ``v`` is renamed ``phi(v)``; colors travel with their vertex."""
        if phi.degree != self.n:
            raise ContractViolation("permutation degree does not match the graph")
        image = phi.image
        colors = np.empty(self.n, dtype=np.int64)
        colors[image] = self.colors
        edges = [(int(image[u]), int(image[v])) for u, v in self.edges()]
        return ColoredGraph(self.n, edges, colors.tolist())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.adjacency == other.adjacency
            and bool(np.array_equal(self.colors, other.colors))
        )

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency, self.colors.tobytes()))

    def __repr__(self) -> str:
        return f"ColoredGraph(n={self.n}, m={self.edge_count}, colors={self.color_count})"


def is_automorphism(graph: ColoredGraph, phi: Permutation) -> bool:
    return graph.is_automorphism(phi)


def permute_graph(graph: ColoredGraph, phi: Permutation) -> ColoredGraph:
    return graph.permuted(phi)
