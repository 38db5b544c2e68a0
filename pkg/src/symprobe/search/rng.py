"""
Reproducible random streams.

One counter-based Philox stream per consumer, derived from a global seed and
the consumer's index (0 is the coordinator, workers count from 1).
"""

from bisect import bisect_right
from typing import List, Sequence

import numpy as np

_SMALL_BOUND = 1 << 62


class RngStreams:
    """Factory of independent ``numpy.random.Generator`` streams for one solve."""

    def __init__(self, seed: int):
        self.seed = seed

    def stream(self, index: int) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(index,))
        return np.random.Generator(np.random.Philox(sequence))


def entropy_seed() -> int:
    """A fresh 64-bit seed from OS entropy."""
    return int(np.random.SeedSequence().entropy) & ((1 << 64) - 1)


def uniform_below(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound), exact for arbitrarily large ``bound``."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    if bound < _SMALL_BOUND:
        return int(rng.integers(bound))
    bits = bound.bit_length()
    nbytes = (bits + 7) // 8
    while True:
        value = int.from_bytes(rng.bytes(nbytes), "little") >> (nbytes * 8 - bits)
        if value < bound:
            return value


def weighted_index(rng: np.random.Generator, cumulative: Sequence[int]) -> int:
    """
    Index ``i`` drawn with probability proportional to the i-th weight.

    Args:
        cumulative: running sums of the (positive, integer) weights
    """
    return bisect_right(cumulative, uniform_below(rng, cumulative[-1]))


def cumulative_weights(weights: Sequence[int]) -> List[int]:
    out: List[int] = []
    total = 0
    for w in weights:
        total += w
        out.append(total)
    return out
