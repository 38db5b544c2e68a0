"""
Run reports: one record per solve, rendered as JSON lines or a rich table.

Both renderings are produced from the same ``model_dump`` so they always carry
identical values.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from .core.schemas import SolverResult
from .graph.colored_graph import ColoredGraph
from .graph.permutation import Permutation


class RunReport(BaseModel):
    """Machine- and human-readable summary of one solve."""
    input: str
    n: int = Field(..., ge=0)
    m: int = Field(..., ge=0)
    group_order: int = Field(..., ge=1)
    generator_count: int = Field(..., ge=0)
    generators: List[str] = Field(default_factory=list, description="1-based cycle notation")
    termination: str
    phase_seconds: Dict[str, float] = Field(default_factory=dict)
    wall_seconds: float = 0.0
    threads: int
    seed: int
    error_bound: float
    permuted: bool = False

    @classmethod
    def from_result(
        cls,
        input_path: str,
        graph: ColoredGraph,
        result: SolverResult,
        generators: Optional[List[Permutation]] = None,
        permuted: bool = False,
    ) -> "RunReport":
        """
        Args:
            generators: generators to report instead of ``result.generators``
                (already translated back to the input labels)
        """
        gens = result.generators if generators is None else generators
        return cls(
            input=input_path,
            n=graph.n,
            m=graph.edge_count,
            group_order=result.group_order,
            generator_count=len(gens),
            generators=[g.to_cycles() for g in gens],
            termination=result.termination.value,
            phase_seconds=dict(result.statistics.mode_seconds),
            wall_seconds=round(result.elapsed_seconds, 6),
            threads=result.threads,
            seed=result.seed,
            error_bound=result.error_bound,
            permuted=permuted,
        )


def render_jsonl(report: RunReport) -> str:
    return report.model_dump_json()


def render_human(report: RunReport, console: Console) -> None:
    """Print ``report`` as a two-column table followed by its generators."""
    data = report.model_dump()
    table = Table(title="symprobe run", show_header=False)
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    for key, value in data.items():
        if key in ("generators", "phase_seconds"):
            continue
        table.add_row(key, str(value))
    for mode, seconds in data["phase_seconds"].items():
        table.add_row(f"phase_seconds.{mode}", str(seconds))
    console.print(table)
    for index, cycles in enumerate(data["generators"], start=1):
        console.print(f"generator {index}: {cycles}", markup=False, highlight=False)
