"""
Tests for the brute-force oracle and the full search tree.
"""

import pytest

from symprobe.errors import OracleRefused
from symprobe.graph.colored_graph import ColoredGraph
from symprobe.graph.permutation import Permutation
from symprobe.oracle.brute_force import MAX_ORACLE_VERTICES, brute_force_automorphisms, group_order
from symprobe.oracle.ir_tree import enumerate_ir_tree


class TestBruteForce:
    @pytest.mark.parametrize(
        "name",
        ["k3", "k4", "k5", "p3", "p4", "c5", "c6", "two_k2", "two_k3", "star4", "empty4",
         "colored_k3", "rigid6", "petersen", "cube", "c3_c4"],
    )
    def test_known_orders(self, corpus, name):
        graph, order = corpus[name]
        assert group_order(graph) == order

    @pytest.mark.parametrize("name", ["k4", "p4", "two_k2", "c5", "rigid6", "colored_k3"])
    def test_exhaustive_mode_agrees(self, corpus, name):
        graph, _ = corpus[name]
        pruned = brute_force_automorphisms(graph)
        exhaustive = brute_force_automorphisms(graph, exhaustive=True)
        assert set(pruned.elements) == set(exhaustive.elements)

    def test_result_is_a_group(self, corpus):
        graph, _ = corpus["c6"]
        group = brute_force_automorphisms(graph)
        assert group.is_closed()
        assert Permutation.identity(6) in group
        assert all(graph.is_automorphism(g) for g in group.elements)

    def test_refuses_large_graphs(self):
        graph = ColoredGraph(MAX_ORACLE_VERTICES + 1, [])
        with pytest.raises(OracleRefused):
            brute_force_automorphisms(graph)


class TestIrTree:
    def test_triangle(self, k3):
        tree = enumerate_ir_tree(k3)
        assert len(tree.leaves) == 6
        assert tree.leaf_classes == [list(range(6))]
        assert [len(level) for level in tree.levels] == [1, 3, 6]
        assert tree.node_count == 10

    def test_path(self, corpus):
        graph, _ = corpus["p3"]
        tree = enumerate_ir_tree(graph)
        assert len(tree.leaves) == 2
        assert len(tree.leaf_classes) == 1

    def test_rigid_graph(self, corpus):
        graph, _ = corpus["rigid6"]
        tree = enumerate_ir_tree(graph)
        assert len(tree.leaves) == 1
        assert tree.class_of(0) == [0]

    @pytest.mark.parametrize(
        "name", ["k3", "k4", "p4", "c5", "c6", "two_k2", "two_k3", "star4", "empty4", "cube", "c3_c4"]
    )
    def test_every_leaf_class_has_the_size_of_the_group(self, corpus, name):
        graph, order = corpus[name]
        tree = enumerate_ir_tree(graph)
        assert len(tree.leaves) % order == 0
        assert all(len(members) == order for members in tree.leaf_classes)

    def test_count_matching(self, k3):
        tree = enumerate_ir_tree(k3)
        root_digest = tree.levels[0][0].digest
        assert tree.count_matching(0, root_digest) == 1
        assert tree.count_matching(1, tree.levels[1][0].digest) == 3
        assert tree.count_matching(5, root_digest) == 0

    def test_node_limit(self, corpus):
        graph, _ = corpus["k4"]
        with pytest.raises(OracleRefused):
            enumerate_ir_tree(graph, max_nodes=10)

    def test_unknown_leaf(self, k3):
        with pytest.raises(KeyError):
            enumerate_ir_tree(k3).class_of(99)
