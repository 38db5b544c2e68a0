"""
Tests for cell selection, random streams and the search tree.
"""

from collections import Counter

import pytest

from symprobe.errors import ContractViolation
from symprobe.graph.coloring import Coloring
from symprobe.graph.permutation import Permutation
from symprobe.search.node import LeafRecord
from symprobe.search.rng import (
    RngStreams,
    cumulative_weights,
    entropy_seed,
    uniform_below,
    weighted_index,
)
from symprobe.search.selector import CellSelectorPolicy, select_cell, select_cell_start
from symprobe.search.tree import SearchTree, derive_automorphism, random_walk

# 0.999 quantiles of the chi-squared distribution
CHI2_999 = {9: 27.877, 11: 31.264, 23: 49.728}


def chi_squared(counts: Counter, categories: int, samples: int) -> float:
    expected = samples / categories
    observed = list(counts.values()) + [0] * (categories - len(counts))
    return sum((o - expected) ** 2 / expected for o in observed)


class FixedRng:
    """Stands in for a numpy Generator whose draws are known in advance."""

    def __init__(self, value: int):
        self.value = value

    def integers(self, bound: int) -> int:
        assert 0 <= self.value < bound
        return self.value


class TestSelector:
    coloring = Coloring.from_colors([0, 0, 1, 1, 1, 2, 3, 3, 3])

    @pytest.mark.parametrize(
        "policy, start",
        [
            (CellSelectorPolicy.FIRST_LARGEST, 2),
            (CellSelectorPolicy.FIRST_SMALLEST, 0),
            (CellSelectorPolicy.FIRST, 0),
        ],
    )
    def test_policies(self, policy, start):
        assert select_cell_start(self.coloring, policy) == start

    def test_discrete_coloring_selects_nothing(self, k3):
        assert select_cell(k3, Coloring.from_colors([0, 1, 2])) == []

    def test_selected_cell_vertices(self, k3):
        assert sorted(select_cell(k3, Coloring.unit(3))) == [0, 1, 2]


class TestRng:
    def test_streams_are_reproducible_and_independent(self):
        streams = RngStreams(99)
        first = streams.stream(1).integers(1 << 40, size=4).tolist()
        assert first == RngStreams(99).stream(1).integers(1 << 40, size=4).tolist()
        assert first != streams.stream(2).integers(1 << 40, size=4).tolist()

    def test_entropy_seed_fits_64_bits(self):
        assert 0 <= entropy_seed() < 1 << 64

    def test_uniform_below_large_bounds(self):
        rng = RngStreams(1).stream(0)
        bound = 3 * (1 << 100) + 1
        draws = [uniform_below(rng, bound) for _ in range(50)]
        assert all(0 <= d < bound for d in draws)
        assert any(d >= 1 << 100 for d in draws)

    def test_uniform_below_rejects_empty_range(self):
        with pytest.raises(ValueError):
            uniform_below(RngStreams(1).stream(0), 0)

    @pytest.mark.parametrize("draw, index", [(0, 0), (1, 1), (2, 1), (3, 2), (5, 2)])
    def test_weighted_index(self, draw, index):
        cumulative = cumulative_weights([1, 2, 3])
        assert cumulative == [1, 3, 6]
        assert weighted_index(FixedRng(draw), cumulative) == index


class TestSearchTree:
    def test_root_is_refined_once(self, corpus):
        graph, _ = corpus["p3"]
        tree = SearchTree(graph)
        root = tree.root()
        assert root is tree.root()
        assert root.level == 0
        assert sorted(tree.selected_cell(root)) == [0, 2]

    def test_child_individualizes_and_refines(self, k3):
        tree = SearchTree(k3)
        child, result = tree.child(tree.root(), 1)
        assert result.completed
        assert child.base == (1,)
        assert child.coloring.is_singleton(1)
        assert child.trace.offset == tree.root().trace.position

    def test_child_of_singleton_is_rejected(self, corpus):
        graph, _ = corpus["p3"]
        tree = SearchTree(graph)
        with pytest.raises(ContractViolation):
            tree.child(tree.root(), 1)

    def test_random_walk_reaches_a_leaf(self, corpus):
        graph, _ = corpus["petersen"]
        leaf, base = random_walk(graph, RngStreams(4).stream(0))
        assert leaf.base == base
        assert len(set(base)) == len(base)
        assert sorted(leaf.leaf_permutation) == list(range(graph.n))

    def test_walk_from_deviated_node_is_rejected(self, k3):
        tree = SearchTree(k3)
        child, _ = tree.child(tree.root(), 0, reference=[-1])
        assert child.trace.deviated
        with pytest.raises(ContractViolation):
            tree.random_walk_from(child, RngStreams(1).stream(0))

    def test_target_path(self, corpus):
        graph, _ = corpus["k4"]
        tree = SearchTree(graph)
        target = tree.establish_target(RngStreams(8).stream(0))
        assert target.depth == 3
        assert target.cell_sizes() == [4, 3, 2]
        assert len(target.nodes) == len(target.level_ends) == 4
        assert target.level_ends[-1] == len(target.tokens)
        assert target.leaf.digest == target.nodes[-1].digest
        assert target.node(0) is tree.root()
        assert target.node(4) is None
        for level, node in enumerate(target.nodes):
            assert node.base == target.base[:level]

    def test_target_of_a_discrete_root(self, corpus):
        graph, _ = corpus["rigid6"]
        target = SearchTree(graph).establish_target(RngStreams(8).stream(0))
        assert target.depth == 0
        assert target.cells == []

    def test_derive_automorphism_between_leaves(self, k3):
        tree = SearchTree(k3)
        rng = RngStreams(2).stream(0)
        target = tree.establish_target(rng)
        for _ in range(10):
            leaf, _ = tree.random_walk(rng)
            phi = derive_automorphism(k3, target.leaf, leaf)
            assert phi is not None
            assert k3.is_automorphism(phi)
            assert [phi(v) for v in leaf.base] == list(target.base)

    def test_derive_automorphism_certifies(self, corpus):
        graph, _ = corpus["p3"]
        target = LeafRecord((0,), Permutation([0, 1, 2]), 0)
        other = LeafRecord((1,), Permutation([1, 0, 2]), 0)
        assert derive_automorphism(graph, target, other) is None


def _leaf_frequencies(graph, samples: int, seed: int) -> Counter:
    tree = SearchTree(graph)
    rng = RngStreams(seed).stream(0)
    counts: Counter = Counter()
    for _ in range(samples):
        _, base = tree.random_walk(rng)
        counts[base] += 1
    return counts


@pytest.mark.slow
@pytest.mark.parametrize("name, leaves, samples", [("c5", 10, 5000), ("c6", 12, 3600), ("k4", 24, 4800)])
def test_random_walks_reach_every_leaf_uniformly(corpus, name, leaves, samples):
    graph, order = corpus[name]
    assert leaves == order
    counts = _leaf_frequencies(graph, samples, seed=11)
    assert len(counts) == leaves
    assert chi_squared(counts, leaves, samples) < CHI2_999[leaves - 1]
