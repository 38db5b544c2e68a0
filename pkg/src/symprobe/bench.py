"""
Benchmark harness: sequential solves over a set of graphs and thread counts,
emitted as CSV.
"""

import csv
import re
import statistics
import time
from collections import defaultdict
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from .config import SolverConfig
from .core.schemas import Termination
from .core.solver import solve
from .graph.dimacs import load_graph
from .utils.logger import get_logger

logger = get_logger(__name__)

SCHEMA_LINE = "# symprobe-bench schema v1"
SUMMARY_LINE = "# summary"
SUMMARY_HEADER = ("class", "threads", "median_wall_ms", "relative")


@dataclass
class BenchRow:
    graph: str
    n: int
    m: int
    threads: int
    repeat: int
    wall_ms: float
    order: int
    terminated: bool


HEADER = tuple(f.name for f in fields(BenchRow))


def graph_class(path: Path) -> str:
    """File stem up to the first ``-`` or ``_``."""
    return re.split(r"[-_]", path.stem, maxsplit=1)[0]


def run_bench(
    paths: Sequence[Path],
    threads_list: Sequence[int],
    repeats: int,
    seed: int,
    timeout: Optional[float] = None,
    base_config: Optional[SolverConfig] = None,
) -> List[BenchRow]:
    """
    Solve every graph at every thread count ``repeats`` times.

    Runs hitting ``timeout`` are kept with ``terminated=False``.
    """
    base = (base_config or SolverConfig()).model_dump()
    rows: List[BenchRow] = []
    for path in paths:
        graph = load_graph(path)
        for threads in threads_list:
            config = SolverConfig(
                **{**base, "threads": threads, "seed": seed, "time_limit_seconds": timeout}
            )
            for repeat in range(repeats):
                started = time.perf_counter()
                result = solve(graph, config)
                wall_ms = (time.perf_counter() - started) * 1000.0
                row = BenchRow(
                    graph=path.name,
                    n=graph.n,
                    m=graph.edge_count,
                    threads=threads,
                    repeat=repeat,
                    wall_ms=round(wall_ms, 3),
                    order=result.group_order,
                    terminated=result.termination is not Termination.TIMEOUT,
                )
                logger.info("Bench run", **asdict(row))
                rows.append(row)
    return rows


def summarize(rows: Sequence[BenchRow]) -> List[Tuple[str, int, float, Optional[float]]]:
    """
    Median wall time per (class, threads), relative to the class's
    single-thread median.

    A class without a single-thread run has no relative value.
    """
    walls: Dict[Tuple[str, int], List[float]] = defaultdict(list)
    for row in rows:
        walls[(graph_class(Path(row.graph)), row.threads)].append(row.wall_ms)
    medians = {key: statistics.median(values) for key, values in walls.items()}
    summary: List[Tuple[str, int, float, Optional[float]]] = []
    for cls in sorted({key[0] for key in medians}):
        counts = sorted(t for c, t in medians if c == cls)
        reference = medians.get((cls, 1))
        for threads in counts:
            median = medians[(cls, threads)]
            relative: Optional[float] = None
            if reference is not None:
                relative = round(median / reference, 4) if reference > 0 else 1.0
            summary.append((cls, threads, round(median, 3), relative))
    return summary


def write_csv(rows: Sequence[BenchRow], out: TextIO) -> None:
    out.write(SCHEMA_LINE + "\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(
            [row.graph, row.n, row.m, row.threads, row.repeat, row.wall_ms, row.order,
             "true" if row.terminated else "false"]
        )
    out.write(SUMMARY_LINE + "\n")
    writer.writerow(SUMMARY_HEADER)
    for entry in summarize(rows):
        writer.writerow(entry)
