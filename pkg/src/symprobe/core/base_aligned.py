"""
Base-aligned search.

Walks start at a node of the target path, individualize a vertex of that
node's selected cell that is not yet known to be in the orbit of the base
point, and continue randomly to a leaf. Finds are sifted non-uniformly, so they
never move the abort counters. When every level's transversal covers its whole
cell, the group is known exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from ..search.rng import uniform_below
from ..utils.logger import get_logger
from .context import SearchContext

logger = get_logger(__name__)


@dataclass
class BaseAlignedOutcome:
    """Result of a base-aligned phase."""
    deterministic: bool
    walks: int = 0
    automorphisms: int = 0
    hard_levels: List[int] = field(default_factory=list)


class BaseAlignedSearch:
    """
    Orbit completion along the target path.

    A level is hard after ``hard_walk_factor · |cell|`` consecutive walks from
    it that did not grow its transversal.
    """

    def __init__(self, ctx: SearchContext):
        self.ctx = ctx
        depth = ctx.target.depth
        self._fruitless = [0] * depth
        self._hard = [False] * depth
        self._cell_sizes = ctx.target.cell_sizes()

    def current_level(self) -> Optional[int]:
        """Deepest level whose transversal is incomplete and which is not hard."""
        sizes = self.ctx.structure.level_sizes()
        for level in reversed(range(self.ctx.target.depth)):
            if sizes[level] < self._cell_sizes[level] and not self._hard[level]:
                return level
        return None

    def _walk(self, level: int) -> Tuple[int, bool]:
        ctx = self.ctx
        rng = ctx.pool.rng()
        known = set(ctx.structure.orbit(level))
        candidates = [v for v in ctx.target.cells[level] if v not in known]
        if not candidates:
            return level, False
        v = candidates[uniform_below(rng, len(candidates))]
        child, _ = ctx.tree.child(ctx.target.nodes[level], v)
        leaf, _ = ctx.tree.random_walk_from(child, rng)
        ctx.stats.increment("walks")
        phi = ctx.match_leaf(leaf)
        if phi is None:
            return level, False
        # the inverse maps β_level to v, so v lands in T_level
        ctx.sift(phi.inverse(), uniform=False)
        return level, True

    def run(self) -> BaseAlignedOutcome:
        """Walk until all levels are complete or hard, or the time runs out."""
        ctx = self.ctx
        outcome = BaseAlignedOutcome(deterministic=False)
        last_sizes = ctx.structure.level_sizes()

        def next_task() -> Optional[Callable[[], Tuple[int, bool]]]:
            if ctx.expired():
                return None
            level = self.current_level()
            if level is None:
                return None
            return lambda: self._walk(level)

        def on_result(result: Tuple[int, bool]) -> None:
            level, found = result
            outcome.walks += 1
            if found:
                outcome.automorphisms += 1
            size = ctx.structure.level_sizes()[level]
            if size > last_sizes[level]:
                self._fruitless[level] = 0
            else:
                self._fruitless[level] += 1
            last_sizes[level] = size
            limit = ctx.config.hard_walk_factor * self._cell_sizes[level]
            if self._fruitless[level] >= limit and not self._hard[level]:
                self._hard[level] = True
                logger.info("Base point hard", level=level, cell_size=self._cell_sizes[level])

        ctx.pool.run_until(next_task, on_result)
        outcome.deterministic = ctx.complete()
        outcome.hard_levels = [i for i, hard in enumerate(self._hard) if hard]
        logger.info(
            "Base-aligned search finished",
            deterministic=outcome.deterministic,
            walks=outcome.walks,
            automorphisms=outcome.automorphisms,
            hard_levels=outcome.hard_levels,
        )
        return outcome


def base_aligned_search(ctx: SearchContext) -> BaseAlignedOutcome:
    return BaseAlignedSearch(ctx).run()
