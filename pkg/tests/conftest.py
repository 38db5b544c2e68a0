"""
Pytest configuration and shared fixtures.
"""

from itertools import combinations
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Tuple

import networkx as nx
import pytest
import structlog

from symprobe.config import SolverConfig
from symprobe.core.abort import AbortCriterion
from symprobe.core.context import SearchContext
from symprobe.core.executor import WorkerPool
from symprobe.graph.colored_graph import ColoredGraph
from symprobe.graph.dimacs import serialize_graph
from symprobe.group.schreier import new_structure
from symprobe.search.rng import RngStreams
from symprobe.search.tree import SearchTree
from symprobe.utils.logger import setup_logging
from symprobe.utils.stats_tracker import StatisticsTracker


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: statistical and stress suites")
    config.addinivalue_line("markers", "integration: command-line pipeline tests")


def complete_graph(n: int) -> ColoredGraph:
    return ColoredGraph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> ColoredGraph:
    return ColoredGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> ColoredGraph:
    return ColoredGraph(n, [(i, i + 1) for i in range(n - 1)])


def cube_graph() -> ColoredGraph:
    """Q3 with vertex ids as bit strings: the base (0, 1, 2, 4) is a base of its group."""
    return ColoredGraph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def rigid_graph() -> ColoredGraph:
    """Path 1-2-3-4-5 with a sixth vertex on 3 and 4; no non-trivial automorphism."""
    return ColoredGraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (3, 5)])


# name -> (graph, |Aut(G)|)
CORPUS: Dict[str, Tuple[ColoredGraph, int]] = {
    "k3": (complete_graph(3), 6),
    "k4": (complete_graph(4), 24),
    "k5": (complete_graph(5), 120),
    "k6": (complete_graph(6), 720),
    "k7": (complete_graph(7), 5040),
    "k8": (complete_graph(8), 40320),
    "p3": (path_graph(3), 2),
    "p4": (path_graph(4), 2),
    "c5": (cycle_graph(5), 10),
    "c6": (cycle_graph(6), 12),
    "two_k2": (ColoredGraph(4, [(0, 1), (2, 3)]), 8),
    "two_k3": (ColoredGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]), 72),
    "star4": (ColoredGraph(4, [(0, 1), (0, 2), (0, 3)]), 6),
    "empty4": (ColoredGraph(4, []), 24),
    "colored_k3": (ColoredGraph(3, [(0, 1), (1, 2), (0, 2)], [2, 1, 1]), 2),
    "rigid6": (rigid_graph(), 1),
    "petersen": (ColoredGraph.from_networkx(nx.petersen_graph()), 120),
    "cube": (cube_graph(), 48),
    # refinement cannot tell the two cycles apart
    "c3_c4": (ColoredGraph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (5, 6), (3, 6)]), 48),
}


@pytest.fixture
def corpus() -> Dict[str, Tuple[ColoredGraph, int]]:
    return CORPUS


@pytest.fixture
def k3() -> ColoredGraph:
    return CORPUS["k3"][0]


@pytest.fixture
def c5() -> ColoredGraph:
    return CORPUS["c5"][0]


@pytest.fixture
def k3_file(tmp_path: Path) -> Path:
    path = tmp_path / "k3.dimacs"
    path.write_text(serialize_graph(CORPUS["k3"][0]))
    return path


@pytest.fixture
def write_dimacs(tmp_path: Path) -> Callable[[str, ColoredGraph], Path]:
    """Write a graph under ``tmp_path`` and return its path."""

    def write(name: str, graph: ColoredGraph) -> Path:
        path = tmp_path / name
        path.write_text(serialize_graph(graph))
        return path

    return write


@pytest.fixture
def test_config() -> SolverConfig:
    return SolverConfig(seed=7, threads=1, error_bound=0.01)


@pytest.fixture
def make_context() -> Iterator[Callable[..., SearchContext]]:
    """
    Factory for a solver context with an established target leaf.

    Pools are shut down when the test ends.
    """
    pools: List[WorkerPool] = []

    def factory(graph: ColoredGraph, seed: int = 7, **overrides) -> SearchContext:
        config = SolverConfig(**{"seed": seed, "threads": 2, **overrides})
        pool = WorkerPool(config.threads, RngStreams(seed))
        pools.append(pool)
        tree = SearchTree(graph, config.cell_selector, config.deviation_extension)
        target = tree.establish_target(pool.rng())
        return SearchContext(
            graph=graph,
            config=config,
            tree=tree,
            target=target,
            structure=new_structure(target.base, graph.n),
            abort=AbortCriterion(config.error_bound),
            stats=StatisticsTracker(),
            pool=pool,
        )

    yield factory
    for pool in pools:
        pool.shutdown()


@pytest.fixture(autouse=True)
def quiet_logging() -> Iterator[None]:
    """Fresh logging configuration per test; stale capture streams are dropped."""
    setup_logging("WARNING")
    yield
    structlog.reset_defaults()
