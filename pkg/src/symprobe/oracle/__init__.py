"""Brute-force ground truth for small graphs."""

from .brute_force import MAX_ORACLE_VERTICES, OracleGroup, brute_force_automorphisms, group_order
from .ir_tree import MAX_TREE_NODES, IrTree, enumerate_ir_tree

__all__ = [
    "IrTree",
    "MAX_ORACLE_VERTICES",
    "MAX_TREE_NODES",
    "OracleGroup",
    "brute_force_automorphisms",
    "enumerate_ir_tree",
    "group_order",
]
