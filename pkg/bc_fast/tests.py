from pathlib import Path

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis import strategies as st

from bc_reference.conditions import conditions_prune
from bc_reference.passes import alldifferent_pass
from core.exceptions import InvariantViolation
from core.models import FiniteDomain, IntervalDomain, build_instance
from core.samples import (
    decomposition_gap_instance,
    greedy_tie_instance,
    violated_interval_instance,
)
from core.strategies import interval_instances

from .propagator import propagate_bc
from .sweep import COMPRESSED, FULL, prune_lower_bounds, prune_upper_bounds
from .union_find import CompressedValueLine, FullValueLine, IntervalUnionFind

TESTDATA = Path(__file__).resolve().parent / "testdata"


def _intervals(*pairs):
    return tuple(IntervalDomain(lb, ub) for lb, ub in pairs)


class IntervalUnionFindTests(SimpleTestCase):
    def test_union_tracks_range(self):
        sets = IntervalUnionFind(6)
        sets.union(2, 3)
        sets.union(3, 4)
        self.assertEqual((sets.min(3), sets.max(2)), (2, 4))
        self.assertEqual(sets.find(2), sets.find(4))
        self.assertEqual((sets.min(5), sets.max(5)), (5, 5))

    def test_non_adjacent_union_is_rejected(self):
        sets = IntervalUnionFind(6)
        with self.assertRaises(InvariantViolation):
            sets.union(2, 4)

    def test_union_past_universe_is_rejected(self):
        with self.assertRaises(InvariantViolation):
            IntervalUnionFind(3).union(3, 4)


class ValueLineTests(SimpleTestCase):
    def test_full_line_queries(self):
        line = FullValueLine(6)
        line.take(3)
        line.take(4)
        self.assertEqual(line.next_free(3), 5)
        self.assertEqual(line.run_start(5), 3)
        self.assertEqual(line.run_start(3), 3)
        self.assertEqual(line.advance(2, 2), 6)

    def test_compressed_line_take_must_follow_prefix(self):
        line = CompressedValueLine([1, 3], 6)
        with self.assertRaises(InvariantViolation):
            line.take(4)

    @given(
        st.integers(min_value=1, max_value=12).flatmap(
            lambda top: st.tuples(
                st.just(top),
                st.lists(st.integers(min_value=1, max_value=top), min_size=1, max_size=10),
            )
        )
    )
    @settings(max_examples=120, deadline=None)
    def test_compressed_line_matches_full_line(self, case):
        top, lower_bounds = case
        full = FullValueLine(top)
        compressed = CompressedValueLine(lower_bounds, top)
        self.assertLessEqual(compressed.universe_size, len(set(lower_bounds)) + 1)
        for lb in lower_bounds:
            claim = full.next_free(lb)
            self.assertEqual(compressed.next_free(lb), claim)
            if claim > top:
                break
            full.take(claim)
            compressed.take(claim)
            for x in range(1, top + 2):
                self.assertEqual(compressed.next_free(x), full.next_free(x))
                self.assertEqual(compressed.run_start(x), full.run_start(x))
                self.assertEqual(compressed.is_free(x), full.is_free(x))
            for b in range(1, top + 2):
                free_from_b = sum(1 for x in range(b, top + 2) if full.is_free(x))
                for steps in range(free_from_b + 1):
                    self.assertEqual(compressed.advance(b, steps), full.advance(b, steps))


class PruneUpperBoundsTests(SimpleTestCase):
    def test_golden_trace_for_first_variable(self):
        instance = violated_interval_instance()
        trace = []
        outcome = prune_upper_bounds(instance, instance.initial_bounds(), trace=trace, debug=True)
        expected = (TESTDATA / "upper_sweep_x1.trace").read_text().splitlines()
        self.assertEqual([line for line in trace if line.startswith("X1: ")], expected)
        self.assertTrue(expected[-1].endswith("b=5->3 ub=2"))
        self.assertEqual(outcome.bounds[0], IntervalDomain(1, 2))
        self.assertEqual([c.index for c in outcome.changes], [0])

    def test_modes_agree_on_worked_instance(self):
        instance = violated_interval_instance()
        full = prune_upper_bounds(instance, instance.initial_bounds(), mode=FULL)
        compressed = prune_upper_bounds(instance, instance.initial_bounds(), mode=COMPRESSED)
        self.assertEqual(full, compressed)

    def test_mirror_prunes_lower_bound(self):
        # values negated and edges reversed
        instance = build_instance(
            [
                FiniteDomain.from_range(-5, -1),
                FiniteDomain.from_range(-6, -2),
                FiniteDomain.from_range(-6, -2),
                FiniteDomain.from_range(-6, -3),
                FiniteDomain.from_range(-6, -3),
            ],
            [(1, 0), (2, 0)],
        )
        outcome = prune_lower_bounds(instance, instance.initial_bounds(), debug=True)
        self.assertEqual(instance.denormalize_bounds(outcome.bounds)[0], IntervalDomain(-2, -1))

    def test_non_successors_overflow_is_failure(self):
        instance = build_instance([{1, 2}, {1, 2}, {1, 2}, {1, 2, 3}])
        self.assertTrue(prune_upper_bounds(instance, instance.initial_bounds()).failed)


class PropagateBcTests(SimpleTestCase):
    def test_decomposition_gap_instance(self):
        instance = decomposition_gap_instance()
        for mode in (FULL, COMPRESSED):
            outcome = propagate_bc(instance, instance.initial_bounds(), mode=mode, debug=True)
            self.assertEqual(outcome.bounds, _intervals((1, 3), (1, 3), (3, 4)))

    def test_greedy_tie_instance(self):
        instance = greedy_tie_instance()
        outcome = propagate_bc(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 2), (1, 2), (3, 3), (4, 4)))

    def test_violated_interval_instance(self):
        instance = violated_interval_instance()
        outcome = propagate_bc(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds[0], IntervalDomain(1, 2))

    def test_failed_store(self):
        instance = greedy_tie_instance()
        bounds = _intervals((1, 3), (2, 1), (1, 3), (2, 4))
        self.assertTrue(propagate_bc(instance, bounds).failed)

    @given(interval_instances(max_n=7, max_d=9))
    @settings(max_examples=120, deadline=None)
    def test_modes_agree_with_audited_counters(self, instance):
        bounds = instance.initial_bounds()
        full_stats, compressed_stats = [], []
        full = propagate_bc(instance, bounds, mode=FULL, debug=True, stats=full_stats)
        compressed = propagate_bc(instance, bounds, mode=COMPRESSED, debug=True, stats=compressed_stats)
        self.assertEqual(full, compressed)
        for stat in full_stats + compressed_stats:
            self.assertLessEqual(stat.forward_steps, instance.d)
            self.assertLessEqual(stat.backward_steps, instance.n)
        for stat in compressed_stats:
            self.assertLessEqual(stat.universe_size, instance.n + 1)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=80, deadline=None)
    def test_matches_reference_route(self, instance):
        bounds = instance.initial_bounds()
        self.assertEqual(propagate_bc(instance, bounds).bounds, conditions_prune(instance, bounds).bounds)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=60, deadline=None)
    def test_without_edges_equals_plain_alldifferent(self, instance):
        plain = instance.with_graph(type(instance.graph).empty(instance.n))
        bounds = plain.initial_bounds()
        self.assertEqual(propagate_bc(plain, bounds).bounds, alldifferent_pass(plain, bounds).bounds)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, instance):
        first = propagate_bc(instance, instance.initial_bounds())
        if first.failed:
            return
        second = propagate_bc(instance, first.bounds)
        self.assertEqual(second.bounds, first.bounds)
        self.assertEqual(second.changes, ())
