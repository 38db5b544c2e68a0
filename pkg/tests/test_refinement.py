"""
Tests for traces and color refinement.
"""

import pytest

from symprobe.errors import ContractViolation
from symprobe.graph.colored_graph import ColoredGraph
from symprobe.graph.coloring import Coloring
from symprobe.graph.permutation import random_permutation
from symprobe.refinement.refiner import (
    RefinementOutcome,
    Refiner,
    individualize,
    individualize_in_place,
    refine,
    refiner_for,
)
from symprobe.refinement.trace import Trace, TraceStatus, deviation_value
from symprobe.search.rng import RngStreams


def is_equitable(graph: ColoredGraph, coloring: Coloring) -> bool:
    cells = coloring.cell_sets()
    for cell in cells:
        for other in cells:
            counts = {sum(1 for w in graph.neighbors(v) if w in other) for v in cell}
            if len(counts) > 1:
                return False
    return True


class TestTrace:
    def test_plain_trace_never_deviates(self):
        trace = Trace()
        trace.record(1)
        trace.record(2)
        assert trace.position == 2
        assert trace.status is TraceStatus.MATCHING
        with pytest.raises(ContractViolation):
            trace.deviation()

    def test_first_mismatch_fixes_the_position(self):
        trace = Trace(reference=[1, 2, 3])
        trace.record(1)
        assert deviation_value(trace) is None
        trace.record(5)
        trace.record(3)
        position, _ = trace.deviation()
        assert position == 1
        assert trace.deviated

    def test_same_tokens_give_same_deviation_value(self):
        a, b = Trace(reference=[1, 2]), Trace(reference=[1, 2])
        for trace in (a, b):
            trace.record(1)
            trace.record(9)
            trace.record(4)
        assert a.deviation() == b.deviation()

    def test_sealed_value_ignores_later_tokens(self):
        a, b = Trace(reference=[0]), Trace(reference=[0])
        for trace in (a, b):
            trace.record(7)
            trace.seal()
        a.record(1)
        b.record(2)
        assert a.deviation() == b.deviation()

    def test_extension_budget_counts_split_events(self):
        trace = Trace(reference=[0], extension_budget=1)
        trace.record_split(0, 3)
        assert trace.deviated
        assert not trace.wants_early_out()
        trace.record_split(2, 2)
        assert trace.wants_early_out()

    def test_negative_budget_is_rejected(self):
        with pytest.raises(ContractViolation):
            Trace(extension_budget=-1)

    def test_fork_continues_offset_and_digest(self):
        parent = Trace()
        parent.record(4)
        child = parent.fork()
        assert child.offset == 1
        assert child.digest == parent.digest
        child.record(5)

        whole = Trace()
        whole.record(4)
        whole.record(5)
        assert child.digest == whole.digest

    def test_concatenate(self):
        root = Trace()
        root.record(1)
        child = root.fork()
        child.record(2)
        joined = Trace.concatenate([root, child])
        assert joined.tokens == [1, 2]
        assert joined.digest == child.digest

    def test_concatenate_requires_a_chain(self):
        a, b = Trace(), Trace()
        a.record(1)
        b.record(2)
        with pytest.raises(ContractViolation):
            Trace.concatenate([a, b])


class TestRefinement:
    def test_path_splits_by_degree(self, corpus):
        graph, _ = corpus["p3"]
        result = refine(graph, graph.initial_coloring())
        assert result.completed
        assert result.coloring.cell_sets() == [frozenset({0, 2}), frozenset({1})]

    def test_input_coloring_is_not_modified(self, corpus):
        graph, _ = corpus["p3"]
        coloring = graph.initial_coloring()
        refine(graph, coloring)
        assert coloring.cell_count == 1

    def test_rigid_graph_is_discrete_at_the_root(self, corpus):
        graph, _ = corpus["rigid6"]
        assert refine(graph, graph.initial_coloring()).coloring.is_discrete()

    @pytest.mark.parametrize("name", ["c6", "petersen", "two_k3", "cube", "p4"])
    def test_result_is_equitable(self, corpus, name):
        graph, _ = corpus[name]
        root = refine(graph, graph.initial_coloring()).coloring
        assert is_equitable(graph, root)
        child = individualize(root, root.order[0])
        refined = refine(graph, child, base=[root.order[0]]).coloring
        assert is_equitable(graph, refined)

    def test_individualizing_a_singleton_is_rejected(self, corpus):
        graph, _ = corpus["p3"]
        root = refine(graph, graph.initial_coloring()).coloring
        with pytest.raises(ContractViolation):
            individualize(root, 1)

    def test_base_vertices_must_be_singletons(self, k3):
        with pytest.raises(ContractViolation):
            refine(k3, k3.initial_coloring(), base=[0])

    @pytest.mark.parametrize("name", ["petersen", "colored_k3", "p4", "two_k3"])
    def test_invariant_under_relabeling(self, corpus, name):
        graph, _ = corpus[name]
        relabel = random_permutation(graph.n, RngStreams(21).stream(0))
        image = graph.permuted(relabel)

        initial = graph.initial_coloring()
        v = next(u for u in range(graph.n) if not initial.is_singleton(u))
        original_trace, image_trace = Trace(), Trace()
        original = refine(graph, individualize(graph.initial_coloring(), v), trace=original_trace)
        permuted = refine(
            image, individualize(image.initial_coloring(), relabel(v)), trace=image_trace
        )

        assert original_trace.tokens == image_trace.tokens
        mapped = [frozenset(relabel(u) for u in cell) for cell in original.coloring.cells()]
        assert mapped == permuted.coloring.cell_sets()

    def test_compare_mode_stops_early(self, corpus):
        graph, _ = corpus["p3"]
        trace = Trace(reference=[123456], extension_budget=0)
        result = refine(graph, graph.initial_coloring(), trace=trace)
        assert result.outcome is RefinementOutcome.EARLY_OUT
        assert result.early_out_at == 0

    def test_matching_reference_completes(self, corpus):
        graph, _ = corpus["petersen"]
        reference = Trace()
        refine(graph, graph.initial_coloring(), trace=reference)
        trace = Trace(reference=reference.tokens)
        result = refine(graph, graph.initial_coloring(), trace=trace)
        assert result.completed
        assert trace.deviation() is None
        assert trace.digest == reference.digest

    def test_refiner_is_cached_per_thread(self, k3):
        assert refiner_for(k3) is refiner_for(k3)

    @pytest.mark.parametrize("n", [200, 1000])
    def test_splits_rewrite_only_touched_slots(self, n):
        graph = ColoredGraph(n, [(i, (i + 1) % n) for i in range(n)])
        coloring = Coloring.unit(n)
        individualize_in_place(coloring, 0)
        coloring.order = _CountingList(coloring.order)

        result = Refiner(graph).refine_in_place(coloring, Trace())

        assert result.completed
        assert result.coloring.cell_count == n // 2 + 1
        # A full rescan of the shrinking cell per split rewrites ~n^2/4 slots.
        assert coloring.order.writes <= 20 * n


class _CountingList(list):
    writes = 0

    def __setitem__(self, index, value):
        self.writes += 1
        super().__setitem__(index, value)
