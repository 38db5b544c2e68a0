"""
DIMACS-style graph text format.

    c comment
    p edge <n> <m>
    e <u> <v>
    n <v> <color>

Vertex ids are 1-based in the file and 0-based in memory.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import IO, Dict, List, Tuple, Union

from ..errors import ContractViolation, GraphParseError, VertexRangeError
from .colored_graph import ColoredGraph

Source = Union[str, bytes, IO[str], IO[bytes]]

_DEFAULT_COLOR = 1


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_no = data.count(b"\n", 0, e.start) + 1
        raise GraphParseError(f"invalid UTF-8 byte 0x{data[e.start]:02x}", line_no) from None


def _lines(source: Source) -> List[str]:
    if isinstance(source, bytes):
        return _decode(source).splitlines()
    if isinstance(source, str):
        return source.splitlines()
    data = source.read()
    if isinstance(data, bytes):
        data = _decode(data)
    return data.splitlines()


def _int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {token!r}", line_no) from None


def parse_graph(source: Source) -> ColoredGraph:
    """
    Parse DIMACS text into a ColoredGraph.

    Duplicate edges (in either orientation) are merged. Vertices without an
    ``n`` line get color 1; colors are then compacted preserving their order.

    Raises:
        GraphParseError: malformed header or line, with its 1-based line number
        VertexRangeError: a vertex id outside of [1, n]
    """
    n: int | None = None
    edges: List[Tuple[int, int]] = []
    colors: Dict[int, int] = {}
    last_line = 0

    def vertex(token: str, line_no: int) -> int:
        assert n is not None
        v = _int(token, line_no)
        if not 1 <= v <= n:
            raise VertexRangeError(f"vertex {v} outside of [1, {n}]", line_no)
        return v - 1

    for line_no, raw in enumerate(_lines(source), start=1):
        last_line = line_no
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        fields = line.split()
        kind = fields[0]

        if kind == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", line_no)
            if len(fields) != 4 or fields[1] not in ("edge", "col"):
                raise GraphParseError("expected 'p edge <n> <m>'", line_no)
            n = _int(fields[2], line_no)
            _int(fields[3], line_no)
            if n < 0:
                raise GraphParseError("vertex count must be non-negative", line_no)
            continue

        if n is None:
            raise GraphParseError("line before the 'p edge' header", line_no)

        if kind == "e":
            if len(fields) != 3:
                raise GraphParseError("expected 'e <u> <v>'", line_no)
            u, v = vertex(fields[1], line_no), vertex(fields[2], line_no)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u + 1}", line_no)
            edges.append((u, v))
        elif kind == "n":
            if len(fields) != 3:
                raise GraphParseError("expected 'n <v> <color>'", line_no)
            colors[vertex(fields[1], line_no)] = _int(fields[2], line_no)
        else:
            raise GraphParseError(f"unknown line type {kind!r}", line_no)

    if n is None:
        raise GraphParseError("missing 'p edge <n> <m>' header", max(last_line, 1))

    color_list = [colors.get(v, _DEFAULT_COLOR) for v in range(n)]
    try:
        return ColoredGraph(n, edges, color_list)
    except ContractViolation as e:
        raise GraphParseError(str(e)) from e


def load_graph(path: Union[str, Path]) -> ColoredGraph:
    """Read and parse a DIMACS file."""
    return parse_graph(Path(path).read_bytes())


def serialize_graph(graph: ColoredGraph) -> str:
    """
    Emit DIMACS text with every edge once (``u < v``).

    Color lines are written only when the graph has more than one color.
    """
    out = io.StringIO()
    out.write(f"p edge {graph.n} {graph.edge_count}\n")
    if graph.color_count > 1:
        for v in range(graph.n):
            out.write(f"n {v + 1} {int(graph.colors[v]) + 1}\n")
    for u, v in graph.edges():
        out.write(f"e {u + 1} {v + 1}\n")
    return out.getvalue()
