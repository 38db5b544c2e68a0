"""Graph and permutation primitives."""

from .colored_graph import ColoredGraph, is_automorphism, permute_graph
from .coloring import Coloring
from .dimacs import load_graph, parse_graph, serialize_graph
from .permutation import (
    Permutation,
    compose_all,
    format_generators,
    parse_generator_lines,
    random_permutation,
)

__all__ = [
    "ColoredGraph",
    "Coloring",
    "Permutation",
    "compose_all",
    "format_generators",
    "is_automorphism",
    "load_graph",
    "parse_generator_lines",
    "parse_graph",
    "permute_graph",
    "random_permutation",
    "serialize_graph",
]
