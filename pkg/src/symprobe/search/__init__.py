"""Individualization-refinement search tree: selection, walks, leaf comparison."""

from .node import LeafRecord, SearchNode, TargetLeaf, TargetPath
from .rng import RngStreams, cumulative_weights, entropy_seed, uniform_below, weighted_index
from .selector import CellSelectorPolicy, select_cell, select_cell_start
from .tree import SearchTree, derive_automorphism, random_walk

__all__ = [
    "CellSelectorPolicy",
    "LeafRecord",
    "RngStreams",
    "SearchNode",
    "SearchTree",
    "TargetLeaf",
    "TargetPath",
    "cumulative_weights",
    "derive_automorphism",
    "entropy_seed",
    "random_walk",
    "select_cell",
    "select_cell_start",
    "uniform_below",
    "weighted_index",
]
