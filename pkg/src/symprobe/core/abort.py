"""
The probabilistic abort criterion.

Only uniformly sampled automorphisms move the counters. Once ``c > d`` is
observed the caller stops issuing work, drains in-flight samples (which are
recorded normally and may still reset ``c``) and then calls ``seal``.
"""

from __future__ import annotations

import threading
from typing import Tuple

from ..config import initial_threshold
from ..utils.logger import get_logger
from .schemas import AbortState

logger = get_logger(__name__)


def new_abort_state(error_bound: float) -> AbortState:
    d = initial_threshold(error_bound)
    return AbortState(c=0, d=d, initial_d=d, error_bound=error_bound)


def record_sample(state: AbortState, sift_result: bool, uniform: bool) -> Tuple[AbortState, bool]:
    """
    Apply one sample to ``state``.

    Args:
        state: current counters (not modified)
        sift_result: True if the automorphism sifted through unchanged
        uniform: whether the sample was drawn uniformly

    Returns:
        the updated state and whether ``c > d`` now holds
    """
    if not uniform:
        return state, state.c > state.d
    update = {"uniform_samples": state.uniform_samples + 1}
    if sift_result:
        update["c"] = state.c + 1
    else:
        if state.c > 0:
            update["d"] = state.d + 1
            update["tests_completed"] = state.tests_completed + 1
        update["c"] = 0
    new_state = state.model_copy(update=update)
    return new_state, new_state.c > new_state.d


class AbortCriterion:
    """Thread-safe owner of the abort state with the termination barrier."""

    def __init__(self, error_bound: float):
        self._state = new_abort_state(error_bound)
        self._lock = threading.Lock()
        self._sealed = False

    @property
    def state(self) -> AbortState:
        with self._lock:
            return self._state

    @property
    def sealed(self) -> bool:
        return self._sealed

    def record_sample(self, sift_result: bool, uniform: bool) -> bool:
        """
        Record one sample; samples arriving after the seal are discarded.

        Returns:
            whether ``c > d`` holds after this sample
        """
        with self._lock:
            if self._sealed:
                return True
            self._state, exceeded = record_sample(self._state, sift_result, uniform)
            state = self._state
        if uniform:
            logger.debug("Abort sample", sifted=sift_result, c=state.c, d=state.d)
        return exceeded

    def threshold_exceeded(self) -> bool:
        with self._lock:
            return self._state.c > self._state.d

    def seal(self) -> bool:
        """
        Seal the result if ``c > d`` still holds after the drain.

        Returns:
            whether the criterion is now sealed
        """
        with self._lock:
            if self._state.c > self._state.d:
                self._sealed = True
            return self._sealed
