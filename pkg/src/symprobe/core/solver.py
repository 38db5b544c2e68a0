"""
The parallel randomized automorphism solver.

A coordinator thread owns the target leaf and the mode switching; walks and
BFS chunks run on the worker pool. Shared mutable state is the Schreier
structure, the abort criterion, the statistics and the extra target leaves.
"""

from __future__ import annotations

import time
from typing import Any, Optional

from ..config import SolverConfig
from ..errors import BfsBudgetExceeded
from ..graph.colored_graph import ColoredGraph
from ..group.schreier import new_structure
from ..search.rng import RngStreams, entropy_seed
from ..search.tree import SearchTree
from ..utils.logger import ensure_logging, get_logger
from ..utils.stats_tracker import StatisticsTracker
from .abort import AbortCriterion, new_abort_state
from .base_aligned import base_aligned_search
from .bfs import BfsLevel, bfs_advance, estimate_level_bytes, initial_level
from .context import SearchContext
from .executor import WorkerPool
from .level_search import LevelSearch
from .mode_controller import ModeSignals, estimate_next_level_cost, initial_mode, next_mode
from .schemas import SolverMode, SolverResult, Termination

logger = get_logger(__name__)


class Solver:
    """
    Computes a generating set of Aut(G) with one-sided error.

    Every returned generator is a certified automorphism. The group order is
    exact when termination is deterministic; with probabilistic termination it
    is correct with probability at least 1 - ε.
    """

    def __init__(self, graph: ColoredGraph, config: Optional[SolverConfig] = None):
        """
        Args:
            graph: the colored graph
            config: solver options (defaults from the environment)
        """
        self.graph = graph
        self.config = config or SolverConfig()
        self._bfs_blocked = False
        self._bfs_seconds = 0.0
        self._base_aligned_exhausted = not self.config.enable_base_aligned

    def run(self) -> SolverResult:
        config = self.config
        ensure_logging(config.log_level, config.json_logs)
        seed = config.seed if config.seed is not None else entropy_seed()
        stats = StatisticsTracker()
        started = time.monotonic()
        deadline = started + config.time_limit_seconds if config.time_limit_seconds else None
        tree = SearchTree(self.graph, config.cell_selector, config.deviation_extension)
        logger.info(
            "Solve started",
            n=self.graph.n,
            m=self.graph.edge_count,
            threads=config.threads,
            error_bound=config.error_bound,
            seed=seed,
        )

        with WorkerPool(config.threads, RngStreams(seed)) as pool:
            t0 = time.perf_counter()
            target = tree.establish_target(pool.rng())
            target_seconds = time.perf_counter() - t0
            stats.record_refinements(target.depth + 1, target_seconds)
            # BFS cost starts from the refinements of the target path
            self._bfs_seconds = target_seconds

            if target.depth == 0:
                logger.info("Refinement is discrete at the root")
                return self._result(
                    Termination.DETERMINISTIC,
                    seed,
                    stats,
                    started,
                    abort=new_abort_state(config.error_bound),
                )

            ctx = SearchContext(
                graph=self.graph,
                config=config,
                tree=tree,
                target=target,
                structure=new_structure(target.base, self.graph.n),
                abort=AbortCriterion(config.error_bound),
                stats=stats,
                pool=pool,
                deadline=deadline,
            )
            termination = self._search(ctx)

        generators = ctx.structure.generators()
        return self._result(
            termination,
            seed,
            stats,
            started,
            abort=ctx.abort.state,
            generators=generators,
            group_order=ctx.structure.group_order(),
            base=list(target.base),
        )

    def _search(self, ctx: SearchContext) -> Termination:
        stats = ctx.stats
        mode = initial_mode(self.config)
        level = initial_level(ctx)
        search: Optional[LevelSearch] = None
        logger.info("Mode transition", from_mode=None, to_mode=mode.value)

        while True:
            if ctx.complete():
                return Termination.DETERMINISTIC
            if ctx.expired():
                return Termination.TIMEOUT

            with stats.mode_timer(mode.value):
                if mode is SolverMode.BASE_ALIGNED:
                    base_aligned_search(ctx)
                    self._base_aligned_exhausted = True
                elif mode is SolverMode.BFS:
                    try:
                        advanced = bfs_advance(ctx, level)
                    except BfsBudgetExceeded as e:
                        logger.warning(
                            "BFS memory cap reached",
                            level=e.level,
                            estimated_bytes=e.estimated_bytes,
                            cap_bytes=e.cap_bytes,
                        )
                        self._bfs_blocked = True
                    else:
                        if advanced is None:
                            continue
                        level = advanced
                        self._bfs_seconds += level.seconds
                else:
                    if search is None or search.level is not level:
                        search = LevelSearch(ctx, level)
                    current = search
                    current.run(
                        lambda s: next_mode(self._signals(ctx, SolverMode.LEVEL_SEARCH, level, s), self.config)
                        is SolverMode.LEVEL_SEARCH
                    )
                    if ctx.abort.threshold_exceeded() and ctx.abort.seal():
                        return Termination.PROBABILISTIC

            following = next_mode(self._signals(ctx, mode, level, search), self.config)
            if following is not mode:
                stats.increment("mode_switches")
                logger.info(
                    "Mode transition",
                    from_mode=mode.value,
                    to_mode=following.value,
                    level=level.level,
                    width=level.width,
                )
            mode = following

    def _signals(
        self,
        ctx: SearchContext,
        mode: SolverMode,
        level: BfsLevel,
        search: Optional[LevelSearch],
    ) -> ModeSignals:
        leaf_level = level.is_leaf_level
        cell_size = 0 if leaf_level else len(ctx.target.cells[level.level])
        current = search is not None and search.level is level
        return ModeSignals(
            mode=mode,
            base_aligned_exhausted=self._base_aligned_exhausted,
            bfs_available=not (self._bfs_blocked or leaf_level),
            next_level_cost=estimate_next_level_cost(
                level.width, cell_size, ctx.stats.mean_refine_seconds()
            ),
            cost_so_far=self._bfs_seconds,
            next_level_bytes=estimate_level_bytes(level.width, cell_size, ctx.graph.n),
            level_walks=search.walks if current else 0,
            level_occurrences=search.occurrences if current else 0,
            level_width=level.width,
        )

    def _result(
        self,
        termination: Termination,
        seed: int,
        stats: StatisticsTracker,
        started: float,
        **fields: Any,
    ) -> SolverResult:
        result = SolverResult(
            termination=termination,
            error_bound=self.config.error_bound,
            seed=seed,
            threads=self.config.threads,
            statistics=stats.snapshot(),
            elapsed_seconds=time.monotonic() - started,
            **fields,
        )
        logger.info(
            "Solve finished",
            termination=termination.value,
            group_order=result.group_order,
            generators=len(result.generators),
            elapsed_seconds=round(result.elapsed_seconds, 4),
        )
        return result


def solve(graph: ColoredGraph, config: Optional[SolverConfig] = None, **overrides: Any) -> SolverResult:
    """
    Solve ``graph``.

    Args:
        graph: the colored graph
        config: solver options
        **overrides: individual options replacing those of ``config``
            (e.g. ``error_bound=0.05, threads=4, seed=7``)

    Raises:
        ValidationError: if an override is out of range
    """
    config = config or SolverConfig()
    if overrides:
        config = SolverConfig(**{**config.model_dump(), **overrides})
    return Solver(graph, config).run()
