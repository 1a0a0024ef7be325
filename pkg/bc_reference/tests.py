from django.test import SimpleTestCase
from hypothesis import given, settings

from core.models import IntervalDomain, build_instance
from core.samples import (
    decomposition_gap_instance,
    direct_pruning_instance,
    greedy_tie_instance,
    pigeonhole_instance,
    violated_interval_instance,
)
from core.strategies import interval_instances
from dc_oracle.enumeration import bound_support_hull
from feasibility.services import is_preprocessed, preprocess_bounds

from .binary_search import filter_binary_search
from .conditions import UPPER, conditions_check, conditions_prune, interval_counters, violated_intervals
from .direct_pruning import bound_support_exists, direct_prune
from .passes import alldifferent_pass, precedence_pass, propagate_decomposed_alldifferent


def _intervals(*pairs):
    return tuple(IntervalDomain(lb, ub) for lb, ub in pairs)


class PassTests(SimpleTestCase):
    def test_hall_interval_pushes_outside_bounds(self):
        instance = build_instance([{1, 2}, {1, 2}, {1, 2, 3, 4}])
        outcome = alldifferent_pass(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds[2], IntervalDomain(3, 4))

    def test_violated_hall_interval(self):
        instance = pigeonhole_instance()
        self.assertTrue(alldifferent_pass(instance, instance.initial_bounds()).failed)

    def test_strict_precedence_chain(self):
        instance = build_instance([{1, 2, 3}] * 3, [(0, 1), (1, 2)])
        outcome = precedence_pass(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 1), (2, 2), (3, 3)))

    def test_binary_decomposition_misses_gap(self):
        instance = decomposition_gap_instance()
        outcome = propagate_decomposed_alldifferent(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, instance.initial_bounds())


class DirectPruneTests(SimpleTestCase):
    def test_fixing_first_variable(self):
        instance = direct_pruning_instance()
        store = direct_prune(instance, instance.initial_bounds(), 0, 2)
        self.assertEqual(store.bounds, _intervals((2, 2), (3, 3), (1, 3)))

    def test_fixing_unrelated_variable(self):
        instance = direct_pruning_instance()
        store = direct_prune(instance, instance.initial_bounds(), 2, 1)
        self.assertEqual(store.bounds, _intervals((2, 2), (2, 3), (1, 1)))

    def test_successors_and_boundary_values(self):
        instance = violated_interval_instance()
        store = direct_prune(instance, instance.initial_bounds(), 0, 3)
        self.assertEqual(store.bounds, _intervals((3, 3), (4, 6), (4, 6), (4, 6), (4, 6)))
        self.assertFalse(store.is_failed)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=60, deadline=None)
    def test_preserves_weak_edge_condition(self, instance):
        outcome = propagate_decomposed_alldifferent(instance, instance.initial_bounds())
        if outcome.failed:
            return
        weak = preprocess_bounds(instance, outcome.bounds)
        for i, dom in enumerate(weak.bounds):
            for v in {dom.lb, dom.ub}:
                store = direct_prune(instance, weak.bounds, i, v)
                if store.is_failed:
                    continue
                lbs = [b.lb for b in store.bounds]
                ubs = [b.ub for b in store.bounds]
                self.assertTrue(is_preprocessed(instance.graph, lbs, ubs))


class BoundSupportExistsTests(SimpleTestCase):
    def test_gap_value_has_no_support(self):
        instance = decomposition_gap_instance()
        self.assertFalse(bound_support_exists(instance, instance.initial_bounds(), 2, 2))

    def test_upper_value_has_support(self):
        instance = decomposition_gap_instance()
        self.assertTrue(bound_support_exists(instance, instance.initial_bounds(), 2, 4))

    def test_single_variable(self):
        instance = build_instance([{4, 5, 6}])
        for v in (1, 2, 3):
            self.assertTrue(bound_support_exists(instance, instance.initial_bounds(), 0, v))


class FilterBinarySearchTests(SimpleTestCase):
    def test_decomposition_gap_instance(self):
        instance = decomposition_gap_instance()
        outcome = filter_binary_search(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 3), (1, 3), (3, 4)))

    def test_violated_interval_instance(self):
        instance = violated_interval_instance()
        outcome = filter_binary_search(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds[0], IntervalDomain(1, 2))

    def test_greedy_tie_instance(self):
        instance = greedy_tie_instance()
        outcome = filter_binary_search(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 2), (1, 2), (3, 3), (4, 4)))

    def test_unsatisfiable(self):
        instance = pigeonhole_instance()
        self.assertTrue(filter_binary_search(instance, instance.initial_bounds()).failed)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, instance):
        first = filter_binary_search(instance, instance.initial_bounds())
        if first.failed:
            return
        self.assertEqual(filter_binary_search(instance, first.bounds).changes, ())


class ConditionsTests(SimpleTestCase):
    def test_violated_interval_counters(self):
        instance = violated_interval_instance()
        violations = conditions_check(instance, instance.initial_bounds(), 0, 3)
        self.assertEqual(len(violations), 1)
        violation = violations[0]
        self.assertEqual((violation.side, violation.l, violation.u), (UPPER, 3, 6))
        self.assertEqual((violation.counters.B, violation.counters.D, violation.counters.c), (2, 2, 1))

    def test_no_precedences_no_tight_interval(self):
        instance = build_instance([{1, 2, 3}, {1, 2, 3, 4}, {2, 3, 4, 5}])
        bounds = instance.initial_bounds()
        for i, dom in enumerate(bounds):
            self.assertEqual(conditions_check(instance, bounds, i, dom.lb), [])
            self.assertEqual(conditions_check(instance, bounds, i, dom.ub), [])

    def test_conditions_prune_examples(self):
        instance = violated_interval_instance()
        self.assertEqual(conditions_prune(instance, instance.initial_bounds()).bounds[0], IntervalDomain(1, 2))
        gap = decomposition_gap_instance()
        self.assertEqual(conditions_prune(gap, gap.initial_bounds()).bounds[2], IntervalDomain(3, 4))

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=80, deadline=None)
    def test_violations_exactly_when_bound_unsupported(self, instance):
        outcome = propagate_decomposed_alldifferent(instance, instance.initial_bounds())
        if outcome.failed:
            return
        bounds = outcome.bounds
        for i, dom in enumerate(bounds):
            for v in {dom.lb, dom.ub}:
                violated = bool(conditions_check(instance, bounds, i, v))
                self.assertEqual(violated, not bound_support_exists(instance, bounds, i, v), (i, v))

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=60, deadline=None)
    def test_widened_intervals_stay_violated(self, instance):
        bounds = instance.initial_bounds()
        for i in range(instance.n):
            for violation in violated_intervals(instance, bounds, i):
                c = violation.counters.c
                for shift in range(c):
                    if violation.side == UPPER:
                        counters = interval_counters(instance, bounds, i, violation.l - shift, violation.u)[0]
                    else:
                        counters = interval_counters(instance, bounds, i, violation.l, violation.u + shift)[1]
                    self.assertGreaterEqual(counters.c, 1)

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=80, deadline=None)
    def test_routes_reach_the_bound_support_hull(self, instance):
        bounds = instance.initial_bounds()
        hull = bound_support_hull(instance, bounds)
        self.assertEqual(conditions_prune(instance, bounds).bounds, hull)
        self.assertEqual(filter_binary_search(instance, bounds).bounds, hull)
