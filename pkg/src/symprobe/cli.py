"""
symprobe CLI - graph automorphism groups from the command line.

Commands:
- symprobe solve --input G - Compute generators and the group order
- symprobe bench --inputs GLOB - Scaling benchmark as CSV
- symprobe certify --input G --generators FILE - Check permutations
- symprobe oracle --input G - Brute-force group order of a small graph

Exit codes: 0 success, 1 certification failure, 2 unreadable input,
3 invalid flags, 4 input refused by the oracle.
"""

import glob as globbing
import sys
from enum import Enum
from pathlib import Path
from typing import List, Optional

import typer
from click import exceptions as click_exceptions
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel

from . import __version__
from .bench import run_bench, write_csv
from .config import SolverConfig, load_config
from .core.solver import solve as solve_graph
from .errors import ContractViolation, GraphParseError, OracleRefused, PermutationFormatError
from .graph.colored_graph import ColoredGraph
from .graph.dimacs import load_graph
from .graph.permutation import Permutation, format_generators, parse_generator_lines, random_permutation
from .oracle.brute_force import brute_force_automorphisms
from .report import RunReport, render_human, render_jsonl
from .search.rng import RngStreams, entropy_seed
from .search.selector import CellSelectorPolicy
from .utils.logger import setup_logging
from .utils.validators import describe_validation_error, parse_threads_list

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_REFUSED = 4

# stream index reserved for the input relabeling of --permute
PERMUTE_STREAM = 1 << 32

app = typer.Typer(
    name="symprobe",
    help="Parallel randomized graph automorphism solver",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)


class OutputFormat(str, Enum):
    HUMAN = "human"
    JSONL = "jsonl"


def _fail(message: str, code: int) -> typer.Exit:
    err_console.print(f"[red]error:[/red] {message}", highlight=False)
    return typer.Exit(code)


def _load(path: Path) -> ColoredGraph:
    try:
        return load_graph(path)
    except GraphParseError as e:
        raise _fail(f"{path}: {e}", EXIT_PARSE)
    except OSError as e:
        raise _fail(f"{path}: {e.strerror or e}", EXIT_PARSE)


def _config(**overrides) -> SolverConfig:
    try:
        return load_config(**{k: v for k, v in overrides.items() if v is not None})
    except ValidationError as e:
        raise _fail(describe_validation_error(e), EXIT_USAGE)


def _translate_back(graph: ColoredGraph, relabel: Permutation, generators: List[Permutation]) -> List[Permutation]:
    """Conjugate automorphisms of G^π back to automorphisms of G."""
    inverse = relabel.inverse()
    translated = [relabel * g * inverse for g in generators]
    for g in translated:
        if not graph.is_automorphism(g):
            raise ContractViolation(f"translated generator {g.to_cycles()} is not an automorphism")
    return translated


@app.command()
def solve(
    input: Path = typer.Option(..., "--input", "-i", help="Graph in DIMACS format"),
    threads: Optional[int] = typer.Option(None, "--threads", "-t", help="Worker threads (default: all cores)"),
    error: float = typer.Option(0.01, "--error", "-e", help="Error bound ε"),
    seed: Optional[int] = typer.Option(None, "--seed", help="RNG seed (default: OS entropy)"),
    permute: bool = typer.Option(False, "--permute", help="Solve a randomly relabeled copy"),
    output_format: OutputFormat = typer.Option(OutputFormat.HUMAN, "--format", "-f", help="Output format"),
    selector: Optional[CellSelectorPolicy] = typer.Option(None, "--selector", help="Cell selector policy"),
    deviation_extension: Optional[int] = typer.Option(None, "--deviation-extension", help="Split events in a deviation value"),
    extra_targets: Optional[int] = typer.Option(None, "--extra-targets", help="Extra target leaves kept by level search"),
    base_aligned: bool = typer.Option(True, "--base-aligned/--no-base-aligned", help="Run base-aligned search"),
    deviation_sets: bool = typer.Option(True, "--deviation-sets/--no-deviation-sets", help="Deviation-set pruning in BFS"),
    weighted_pruning: bool = typer.Option(True, "--weighted-pruning/--no-weighted-pruning", help="Automorphism pruning in BFS"),
    time_limit: Optional[float] = typer.Option(None, "--time-limit", help="Wall-clock budget in seconds"),
    generators_out: Optional[Path] = typer.Option(None, "--generators-out", help="Write generators in cycle notation"),
    log_level: str = typer.Option("WARNING", "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
    json_logs: bool = typer.Option(False, "--json-logs", help="Log events as JSON"),
):
    """Compute generators and the order of the automorphism group."""
    config = _config(
        threads=threads,
        error_bound=error,
        seed=seed if seed is not None else entropy_seed(),
        cell_selector=selector,
        deviation_extension=deviation_extension,
        extra_target_cap=extra_targets,
        enable_base_aligned=base_aligned,
        enable_deviation_sets=deviation_sets,
        enable_weighted_pruning=weighted_pruning,
        time_limit_seconds=time_limit,
        log_level=log_level,
        json_logs=json_logs,
    )
    setup_logging(config.log_level, json_logs=config.json_logs)
    graph = _load(input)

    target_graph = graph
    relabel: Optional[Permutation] = None
    if permute:
        relabel = random_permutation(graph.n, RngStreams(config.seed).stream(PERMUTE_STREAM))
        target_graph = graph.permuted(relabel)

    result = solve_graph(target_graph, config)
    generators = result.generators
    if relabel is not None:
        generators = _translate_back(graph, relabel, generators)

    report = RunReport.from_result(str(input), graph, result, generators, permuted=permute)
    if output_format is OutputFormat.JSONL:
        typer.echo(render_jsonl(report))
    else:
        render_human(report, console)
    if generators_out is not None:
        generators_out.write_text(format_generators(generators))
    raise typer.Exit(EXIT_OK)


@app.command()
def bench(
    inputs: str = typer.Option(..., "--inputs", help="Glob of DIMACS graphs"),
    threads_list: str = typer.Option("1,2,4,8", "--threads-list", help="Comma-separated thread counts"),
    repeats: int = typer.Option(3, "--repeats", help="Runs per graph and thread count"),
    timeout: Optional[float] = typer.Option(None, "--timeout", help="Per-run budget in seconds"),
    seed: Optional[int] = typer.Option(None, "--seed", help="RNG seed shared by all runs"),
    error: float = typer.Option(0.01, "--error", "-e", help="Error bound ε"),
    output: Optional[Path] = typer.Option(None, "--output", "-o", help="CSV file (default: stdout)"),
    log_level: str = typer.Option("WARNING", "--log-level", help="DEBUG, INFO, WARNING or ERROR"),
):
    """Benchmark solves over graphs and thread counts; emits CSV."""
    try:
        counts = parse_threads_list(threads_list)
    except ValueError as e:
        raise _fail(str(e), EXIT_USAGE)
    if repeats < 1:
        raise _fail("--repeats must be at least 1", EXIT_USAGE)
    paths = sorted(Path(p) for p in globbing.glob(inputs))
    if not paths:
        raise _fail(f"no input matches {inputs!r}", EXIT_USAGE)
    config = _config(
        error_bound=error,
        seed=seed if seed is not None else entropy_seed(),
        time_limit_seconds=timeout,
        log_level=log_level,
    )
    setup_logging(config.log_level)
    for path in paths:
        _load(path)

    rows = run_bench(paths, counts, repeats, config.seed, timeout, config)
    if output is None:
        write_csv(rows, sys.stdout)
    else:
        with output.open("w", newline="") as f:
            write_csv(rows, f)
    raise typer.Exit(EXIT_OK)


@app.command()
def certify(
    input: Path = typer.Option(..., "--input", "-i", help="Graph in DIMACS format"),
    generators: Path = typer.Option(..., "--generators", "-g", help="File of cycle-notation permutations"),
):
    """Check that every listed permutation is an automorphism."""
    graph = _load(input)
    try:
        perms = parse_generator_lines(generators.read_text(encoding="utf-8"), graph.n)
    except PermutationFormatError as e:
        raise _fail(f"{generators}: {e}", EXIT_PARSE)
    except UnicodeDecodeError as e:
        raise _fail(f"{generators}: invalid UTF-8 byte at offset {e.start}", EXIT_PARSE)
    except OSError as e:
        raise _fail(f"{generators}: {e.strerror or e}", EXIT_PARSE)

    for line_no, perm in perms:
        if not graph.is_automorphism(perm):
            console.print(
                f"not an automorphism (line {line_no}): {perm.to_cycles()}",
                markup=False,
                highlight=False,
            )
            raise typer.Exit(EXIT_VIOLATION)
    console.print(f"{len(perms)} permutation(s) certified", highlight=False)
    raise typer.Exit(EXIT_OK)


@app.command()
def oracle(
    input: Path = typer.Option(..., "--input", "-i", help="Graph in DIMACS format (n ≤ 10)"),
    exhaustive: bool = typer.Option(False, "--exhaustive", help="Test all n! permutations"),
):
    """Brute-force order of the automorphism group of a small graph."""
    graph = _load(input)
    try:
        group = brute_force_automorphisms(graph, exhaustive=exhaustive)
    except OracleRefused as e:
        raise _fail(str(e), EXIT_REFUSED)
    typer.echo(str(group.order))
    raise typer.Exit(EXIT_OK)


@app.command()
def info():
    """Show version and configuration defaults."""
    defaults = SolverConfig().model_dump()
    lines = "\n".join(f"[cyan]{key}[/cyan]: {value}" for key, value in defaults.items())
    console.print(Panel(lines, title=f"symprobe {__version__}", border_style="cyan"))


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="symprobe", standalone_mode=False)
    except click_exceptions.UsageError as e:
        e.show(file=sys.stderr)
        return EXIT_USAGE
    except click_exceptions.Abort:
        err_console.print("[yellow]interrupted[/yellow]")
        return EXIT_VIOLATION
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
