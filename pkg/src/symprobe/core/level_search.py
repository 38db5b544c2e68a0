"""
Level search: weight-proportional random walks from a completed BFS level.

A start node is drawn with probability w(node) / W, so the leaf reached is a
uniform sample and every certified automorphism counts for the abort
criterion.
"""

from __future__ import annotations

from typing import Callable, List, Optional

import numpy as np

from ..search.node import SearchNode
from ..search.rng import cumulative_weights, weighted_index
from ..utils.logger import get_logger
from .bfs import BfsLevel
from .context import SearchContext

logger = get_logger(__name__)


class LevelSearch:
    """Uniform leaf sampling rooted at the nodes of one BFS level."""

    def __init__(self, ctx: SearchContext, level: BfsLevel):
        self.ctx = ctx
        self.level = level
        self._cumulative: List[int] = cumulative_weights(
            [node.external_weight for node in level.nodes]
        )
        self.walks = 0
        self.occurrences = 0

    @property
    def total_weight(self) -> int:
        return self._cumulative[-1]

    def draw_node(self, rng: np.random.Generator) -> SearchNode:
        return self.level.nodes[weighted_index(rng, self._cumulative)]

    def success_rate(self) -> float:
        return self.occurrences / self.walks if self.walks else 1.0

    def walk(self) -> bool:
        """One sample; True if it produced a certified automorphism."""
        ctx = self.ctx
        rng = ctx.pool.rng()
        node = self.draw_node(rng)
        leaf, _ = ctx.tree.random_walk_from(node, rng)
        ctx.stats.increment("walks")
        phi = ctx.match_leaf(leaf, store_extra=True)
        if phi is None:
            return False
        ctx.sift(phi, uniform=True)
        return True

    def run(self, keep_going: Callable[["LevelSearch"], bool]) -> int:
        """
        Walk until the abort threshold is exceeded, the transversals are
        complete, the time runs out or ``keep_going`` declines.

        In-flight walks are always drained and recorded before returning.

        Returns:
            walks completed by this call
        """
        ctx = self.ctx

        def next_task() -> Optional[Callable[[], bool]]:
            if ctx.abort.threshold_exceeded() or ctx.expired() or ctx.complete():
                return None
            if not keep_going(self):
                return None
            return self.walk

        def on_result(found: bool) -> None:
            self.walks += 1
            if found:
                self.occurrences += 1

        completed = ctx.pool.run_until(next_task, on_result)
        logger.debug(
            "Level search batch",
            level=self.level.level,
            walks=self.walks,
            occurrences=self.occurrences,
            abort=ctx.abort.state.model_dump(include={"c", "d"}),
        )
        return completed


def level_search(
    ctx: SearchContext,
    level: BfsLevel,
    keep_going: Optional[Callable[[LevelSearch], bool]] = None,
) -> LevelSearch:
    """Run level search on ``level``; returns the search with its counters."""
    search = LevelSearch(ctx, level)
    search.run(keep_going or (lambda _: True))
    return search
