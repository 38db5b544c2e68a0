# SPDX-License-Identifier: MIT
"""
symprobe - parallel randomized graph automorphism solver.

Computes generators and the order of Aut(G) by uniform random walks through
the individualization-refinement search tree, with one-sided error: every
reported generator is certified, only the group order can be too small, and
that with probability at most ε.
"""

__version__ = "0.1.0"

from .config import SolverConfig, load_config
from .core import SolverResult, Termination, solve
from .errors import (
    BfsBudgetExceeded,
    ContractViolation,
    GraphParseError,
    OracleRefused,
    PermutationFormatError,
    SymprobeError,
    VertexRangeError,
)
from .graph import ColoredGraph, Permutation, load_graph, parse_graph

__all__ = [
    "__version__",
    "BfsBudgetExceeded",
    "ColoredGraph",
    "ContractViolation",
    "GraphParseError",
    "OracleRefused",
    "Permutation",
    "PermutationFormatError",
    "SolverConfig",
    "SolverResult",
    "SymprobeError",
    "Termination",
    "VertexRangeError",
    "load_config",
    "load_graph",
    "parse_graph",
    "solve",
]
