"""
Shared state of one solve, handed to every mode.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..config import SolverConfig
from ..graph.colored_graph import ColoredGraph
from ..graph.permutation import Permutation
from ..group.schreier import SchreierStructure
from ..search.node import LeafRecord, TargetPath
from ..search.tree import SearchTree, derive_automorphism
from ..utils.logger import get_logger
from ..utils.stats_tracker import StatisticsTracker
from .abort import AbortCriterion
from .executor import WorkerPool

logger = get_logger(__name__)


@dataclass
class SearchContext:
    """Everything a mode needs; shared between the coordinator and the workers."""
    graph: ColoredGraph
    config: SolverConfig
    tree: SearchTree
    target: TargetPath
    structure: SchreierStructure
    abort: AbortCriterion
    stats: StatisticsTracker
    pool: WorkerPool
    deadline: Optional[float] = None
    _extra_targets: Dict[int, List[LeafRecord]] = field(default_factory=dict)
    _extra_count: int = 0
    _extra_lock: threading.Lock = field(default_factory=threading.Lock)

    def expired(self) -> bool:
        return self.deadline is not None and time.monotonic() >= self.deadline

    def complete(self) -> bool:
        """Whether every transversal along the target path is full."""
        return self.structure.level_sizes() == self.target.cell_sizes()

    def match_leaf(self, leaf: LeafRecord, store_extra: bool = False) -> Optional[Permutation]:
        """
        Certified automorphism mapping ``leaf`` onto the target or a stored extra target.

        Args:
            leaf: leaf reached by a walk
            store_extra: keep an unmatched leaf as an additional target
                (while the cap allows)
        """
        target = self.target.leaf
        if leaf.digest == target.digest:
            phi = derive_automorphism(self.graph, target, leaf)
            if phi is not None:
                self.stats.increment("occurrences")
                return phi
        for extra in self._extra_targets.get(leaf.digest, ()):
            phi = derive_automorphism(self.graph, extra, leaf)
            if phi is not None:
                self.stats.increment("occurrences")
                return phi
        if store_extra:
            self._store_extra(leaf)
        return None

    def _store_extra(self, leaf: LeafRecord) -> None:
        with self._extra_lock:
            if self._extra_count >= self.config.extra_target_cap:
                return
            stored = self._extra_targets.get(leaf.digest, [])
            # readers iterate the old list; publish a new one
            self._extra_targets[leaf.digest] = stored + [leaf]
            self._extra_count += 1
        self.stats.increment("extra_targets_stored")

    def sift(self, phi: Permutation, uniform: bool) -> bool:
        """Sift a certified automorphism and feed the abort criterion."""
        sifted = self.structure.sift(phi)
        self.stats.increment("sifts")
        if not sifted:
            self.stats.increment("generators_added")
        if uniform:
            self.stats.increment("uniform_samples")
        self.abort.record_sample(sifted, uniform)
        return sifted
