"""
Color refinement to the coarsest equitable coloring, with trace recording.

Splitting cells are processed FIFO by cell start. A touched cell is split by
the number of neighbors each member has in the splitter; fragments are laid out
by ascending count. Every decision depends on cell positions, sizes and counts
only, so the token stream and the resulting cell positions are invariant under
relabeling the graph.
"""

from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence

from ..errors import ContractViolation
from ..graph.colored_graph import ColoredGraph
from ..graph.coloring import Coloring
from .trace import Trace, hash_words

_TAG_FRAGMENTS = 0xF4A6_0001


class RefinementOutcome(str, Enum):
    COMPLETED = "completed"
    EARLY_OUT = "early_out"


@dataclass
class RefinementResult:
    """Refined coloring plus how refinement ended."""
    coloring: Coloring
    outcome: RefinementOutcome
    early_out_at: Optional[int] = None

    @property
    def completed(self) -> bool:
        return self.outcome is RefinementOutcome.COMPLETED


def individualize_in_place(coloring: Coloring, v: int) -> int:
    """
    Split ``{v}`` out of its cell, placing the singleton directly before the rest.

    Returns:
        start of the singleton cell (the old cell's start)

    Raises:
        ContractViolation: if ``v`` is already a singleton
    """
    start = coloring.cell_of[v]
    size = coloring.cell_size[start]
    if size == 1:
        raise ContractViolation(f"vertex {v + 1} is already a singleton")
    order, position = coloring.order, coloring.position
    slot = position[v]
    first = order[start]
    order[start], order[slot] = v, first
    position[v], position[first] = start, slot
    coloring.cell_size[start] = 1
    coloring.cell_size[start + 1] = size - 1
    for u in order[start + 1:start + size]:
        coloring.cell_of[u] = start + 1
    coloring.cell_count += 1
    return start


def individualize(coloring: Coloring, v: int) -> Coloring:
    """Copy of ``coloring`` with ``v`` individualized."""
    result = coloring.copy()
    individualize_in_place(result, v)
    return result


class Refiner:
    """
    Refinement engine bound to one graph, owning reusable scratch space.

    A Refiner is not thread-safe; use ``refiner_for`` to get the calling
    thread's instance.
    """

    def __init__(self, graph: ColoredGraph):
        self.graph = graph
        self._count: List[int] = [0] * graph.n
        self._pending: List[bool] = [False] * graph.n

    def refine_in_place(
        self,
        coloring: Coloring,
        trace: Trace,
        splitters: Optional[Iterable[int]] = None,
    ) -> RefinementResult:
        """
        Refine ``coloring`` in place until it is equitable.

        Args:
            coloring: coloring to refine (mutated)
            trace: trace receiving the split tokens
            splitters: starts of the cells to seed the worklist with
                (default: every cell)
        """
        adjacency = self.graph.adjacency
        order = coloring.order
        position = coloring.position
        cell_of = coloring.cell_of
        cell_size = coloring.cell_size
        count = self._count
        pending = self._pending
        n = len(order)

        seeds = list(coloring.cell_starts()) if splitters is None else list(splitters)
        queue: deque[int] = deque()
        for start in seeds:
            if not pending[start]:
                pending[start] = True
                queue.append(start)

        while queue:
            if coloring.cell_count == n:
                break
            w = queue.popleft()
            pending[w] = False

            touched: List[int] = []
            for x in order[w:w + cell_size[w]]:
                for y in adjacency[x]:
                    if count[y] == 0:
                        touched.append(y)
                    count[y] += 1

            by_cell: Dict[int, List[int]] = {}
            for y in touched:
                start = cell_of[y]
                if cell_size[start] > 1:
                    by_cell.setdefault(start, []).append(y)

            for start in sorted(by_cell):
                members = by_cell[start]
                size = cell_size[start]
                untouched = size - len(members)
                buckets: Dict[int, List[int]] = {}
                for u in members:
                    buckets.setdefault(count[u], []).append(u)
                if not untouched and len(buckets) == 1:
                    continue

                # Swap the touched members behind the untouched prefix, which
                # stays where it is as the zero-count fragment.
                tail = start + size
                for u in members:
                    tail -= 1
                    slot = position[u]
                    x = order[tail]
                    order[slot], order[tail] = x, u
                    position[x], position[u] = slot, tail

                keys = sorted(buckets)
                was_pending = pending[start]
                slot = start
                fragments: List[int] = []
                signature: List[int] = [w]
                if untouched:
                    fragments.append(start)
                    cell_size[start] = untouched
                    signature.extend((0, untouched))
                    slot += untouched
                for key in keys:
                    bucket = buckets[key]
                    frag_start = slot
                    fragments.append(frag_start)
                    cell_size[frag_start] = len(bucket)
                    for u in bucket:
                        order[slot] = u
                        position[u] = slot
                        cell_of[u] = frag_start
                        slot += 1
                    signature.extend((key, len(bucket)))
                coloring.cell_count += len(fragments) - 1

                if was_pending:
                    enqueue = fragments[1:]
                else:
                    largest = max(fragments, key=lambda f: (cell_size[f], -f))
                    enqueue = [f for f in fragments if f != largest]
                for f in enqueue:
                    if not pending[f]:
                        pending[f] = True
                        queue.append(f)

                trace.record_split(start, hash_words(_TAG_FRAGMENTS, signature))
                if trace.wants_early_out():
                    for y in touched:
                        count[y] = 0
                    for f in queue:
                        pending[f] = False
                    return self._early_out(coloring, trace)

            for y in touched:
                count[y] = 0

        for f in queue:
            pending[f] = False
        trace.record_end(coloring.cell_count)
        if trace.deviated:
            return self._early_out(coloring, trace)
        return RefinementResult(coloring, RefinementOutcome.COMPLETED)

    @staticmethod
    def _early_out(coloring: Coloring, trace: Trace) -> RefinementResult:
        trace.seal()
        deviation = trace.deviation()
        assert deviation is not None
        return RefinementResult(coloring, RefinementOutcome.EARLY_OUT, deviation[0])


_local = threading.local()


def refiner_for(graph: ColoredGraph) -> Refiner:
    """The calling thread's Refiner for ``graph`` (created on first use)."""
    cache: Dict[int, Refiner] = getattr(_local, "refiners", None) or {}
    _local.refiners = cache
    refiner = cache.get(id(graph))
    if refiner is None or refiner.graph is not graph:
        if len(cache) > 8:
            cache.clear()
        refiner = Refiner(graph)
        cache[id(graph)] = refiner
    return refiner


def refine(
    graph: ColoredGraph,
    coloring: Coloring,
    base: Sequence[int] = (),
    trace: Optional[Trace] = None,
    *,
    splitters: Optional[Iterable[int]] = None,
) -> RefinementResult:
    """
    Ref(G, π, ν): the coarsest equitable coloring refining ``coloring``.

    The input coloring is not modified. Vertices of ``base`` must already be
    singletons (the caller individualizes them).

    Raises:
        ContractViolation: if a base vertex is not a singleton
    """
    for v in base:
        if not coloring.is_singleton(v):
            raise ContractViolation(f"base vertex {v + 1} is not individualized")
    result = coloring.copy()
    return refiner_for(graph).refine_in_place(result, trace if trace is not None else Trace(), splitters)
