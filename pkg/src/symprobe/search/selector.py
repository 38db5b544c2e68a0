"""
Cell selectors: which non-singleton cell to branch on.

Every policy looks at cell sizes and positions only, never at vertex ids.
"""

from enum import Enum
from typing import List, Optional

from ..graph.colored_graph import ColoredGraph
from ..graph.coloring import Coloring


class CellSelectorPolicy(str, Enum):
    FIRST_LARGEST = "first_largest"
    FIRST_SMALLEST = "first_smallest"
    FIRST = "first"


def select_cell_start(
    coloring: Coloring,
    policy: CellSelectorPolicy = CellSelectorPolicy.FIRST_LARGEST,
) -> Optional[int]:
    """Start of the selected cell, or None if the coloring is discrete."""
    if coloring.is_discrete():
        return None
    best: Optional[int] = None
    best_size = 0
    for start in coloring.cell_starts():
        size = coloring.cell_size[start]
        if size == 1:
            continue
        if policy is CellSelectorPolicy.FIRST:
            return start
        if best is None:
            best, best_size = start, size
        elif policy is CellSelectorPolicy.FIRST_LARGEST and size > best_size:
            best, best_size = start, size
        elif policy is CellSelectorPolicy.FIRST_SMALLEST and size < best_size:
            best, best_size = start, size
    return best


def select_cell(
    graph: ColoredGraph,
    coloring: Coloring,
    policy: CellSelectorPolicy = CellSelectorPolicy.FIRST_LARGEST,
) -> List[int]:
    """Sel(G, π): vertices of the selected cell; empty iff ``coloring`` is discrete."""
    start = select_cell_start(coloring, policy)
    return [] if start is None else coloring.cell(start)
