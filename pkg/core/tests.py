from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from .checker import check_assignment
from .exceptions import CycleError, EmptyDomainError, InvalidIndexError
from .graph import PrecedenceGraph, transitive_closure
from .models import (
    BoundsIndex,
    FiniteDomain,
    IntervalDomain,
    PropagationOutcome,
    build_instance,
)
from .samples import direct_pruning_instance, greedy_tie_instance
from .strategies import dag_edges, holey_instances


class BuildInstanceTests(SimpleTestCase):
    def test_closure_of_single_edge(self):
        instance = direct_pruning_instance()
        self.assertEqual(instance.graph.succ_closure[0], {1})
        self.assertEqual(instance.graph.pred_closure[1], {0})
        self.assertEqual(instance.graph.succ_closure[2], set())

    def test_two_cycle_is_rejected(self):
        with self.assertRaises(CycleError):
            build_instance([{1, 2}, {1, 2}], [(0, 1), (1, 0)])

    def test_self_loop_is_rejected(self):
        with self.assertRaises(CycleError) as ctx:
            build_instance([{1, 2}], [(0, 0)])
        self.assertEqual(ctx.exception.cycle, (0,))

    def test_chain_closure(self):
        instance = build_instance([{1, 2, 3}] * 3, [(0, 1), (1, 2)])
        self.assertEqual(instance.graph.succ_closure[0], {1, 2})

    def test_empty_domain(self):
        with self.assertRaises(EmptyDomainError):
            build_instance([{1}, set()])

    def test_edge_index_out_of_range(self):
        with self.assertRaises(InvalidIndexError):
            build_instance([{1}, {2}], [(0, 2)])

    def test_values_normalized_to_start_at_one(self):
        instance = build_instance([{-3, 0}, {5}], [(0, 1)])
        self.assertEqual(instance.value_offset, -4)
        self.assertEqual(instance.domains[0].values, (1, 4))
        self.assertEqual(instance.domains[1].values, (9,))
        self.assertEqual(instance.d, 9)
        self.assertEqual(instance.denormalize_bounds(instance.initial_bounds()),
                         (IntervalDomain(-3, 0), IntervalDomain(5, 5)))

    def test_already_normalized_values_keep_zero_offset(self):
        self.assertEqual(greedy_tie_instance().value_offset, 0)


class TransitiveClosureTests(SimpleTestCase):
    def test_bipartite_edges(self):
        succ, pred = transitive_closure({(0, 2), (1, 2), (0, 3), (1, 3)}, 4)
        self.assertEqual(succ[0], {2, 3})
        self.assertEqual(succ[1], {2, 3})
        self.assertEqual(pred[2], {0, 1})
        self.assertEqual(pred[3], {0, 1})

    def test_empty_edges(self):
        succ, pred = transitive_closure(set(), 3)
        self.assertTrue(all(not s for s in succ))
        self.assertTrue(all(not p for p in pred))

    def test_long_chain(self):
        succ, _ = transitive_closure({(0, 1), (1, 2), (2, 3)}, 4)
        self.assertEqual(succ[0], {1, 2, 3})

    def test_cycle(self):
        with self.assertRaises(CycleError):
            transitive_closure({(0, 1), (1, 2), (2, 0)}, 3)

    @given(st.integers(min_value=1, max_value=10).flatmap(
        lambda n: st.tuples(st.just(n), dag_edges(n, edge_probability=0.4))))
    @settings(max_examples=60, deadline=None)
    def test_closure_is_symmetric_and_irreflexive(self, case):
        n, edges = case
        graph = PrecedenceGraph.from_edges(n, edges)
        self.assertEqual((graph.succ_closure, graph.pred_closure), transitive_closure(edges, n))
        for i in range(n):
            self.assertNotIn(i, graph.succ_closure[i])
            for j in range(n):
                self.assertEqual(j in graph.succ_closure[i], i in graph.pred_closure[j])
        position = {v: k for k, v in enumerate(graph.topological_order)}
        for i, j in graph.closure_edges:
            self.assertLess(position[i], position[j])

    def test_reversed_swaps_closures(self):
        graph = PrecedenceGraph.from_edges(3, [(0, 1), (1, 2)])
        mirror = graph.reversed()
        self.assertEqual(mirror.succ_closure[2], {0, 1})
        self.assertEqual(mirror.edges, {(1, 0), (2, 1)})

    def test_flatness(self):
        self.assertTrue(PrecedenceGraph.from_edges(4, [(0, 2), (1, 3)]).is_flat())
        self.assertFalse(PrecedenceGraph.from_edges(3, [(0, 1), (1, 2)]).is_flat())


class DomainTypeTests(SimpleTestCase):
    def test_finite_domain_is_sorted_and_unique(self):
        dom = FiniteDomain((3, 1, 3, 2))
        self.assertEqual(dom.values, (1, 2, 3))
        self.assertEqual(dom.bounds(), IntervalDomain(1, 3))
        self.assertTrue(dom.is_interval())

    def test_snapping_helpers(self):
        dom = FiniteDomain((1, 4, 7))
        self.assertEqual(dom.first_at_least(2), 4)
        self.assertEqual(dom.last_at_most(6), 4)
        self.assertIsNone(dom.first_at_least(8))
        self.assertIsNone(dom.last_at_most(0))
        self.assertEqual(str(dom), "{1,4,7}")

    def test_interval_failure_marker(self):
        self.assertTrue(IntervalDomain(3, 2).is_failed)
        self.assertEqual(IntervalDomain(3, 2).width, 0)

    def test_bounds_index(self):
        index = BoundsIndex.from_bounds(greedy_tie_instance().initial_bounds())
        self.assertEqual(index.L, (1, 2))
        self.assertEqual(index.U, (3, 4, 5))
        self.assertEqual(index.endpoints, (1, 2, 3, 4, 5))

    def test_outcome_records_changes(self):
        before = (IntervalDomain(1, 3), IntervalDomain(2, 4))
        after = (IntervalDomain(1, 3), IntervalDomain(3, 4))
        outcome = PropagationOutcome.from_bounds(before, after)
        self.assertFalse(outcome.failed)
        self.assertEqual(len(outcome.changes), 1)
        self.assertEqual(outcome.changes[0].index, 1)

    def test_outcome_failure_on_wipeout(self):
        outcome = PropagationOutcome.from_bounds((IntervalDomain(1, 1),), (IntervalDomain(2, 1),))
        self.assertTrue(outcome.failed)


class CheckerTests(SimpleTestCase):
    def test_valid_support(self):
        self.assertEqual(check_assignment(greedy_tie_instance(), (1, 2, 3, 4)), [])

    def test_reports_each_problem(self):
        problems = check_assignment(direct_pruning_instance(), (2, 2, 5))
        self.assertEqual(len(problems), 3)

    @given(holey_instances())
    @settings(max_examples=40, deadline=None)
    def test_normalization_round_trip(self, instance):
        for dom in instance.domains:
            restored = dom.shift(instance.value_offset)
            self.assertEqual(tuple(instance.normalize(v) for v in restored), dom.values)
        self.assertEqual(min(dom.min for dom in instance.domains), 1)
