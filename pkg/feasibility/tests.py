from django.test import SimpleTestCase
from hypothesis import given, settings

from core.checker import check_assignment, in_box
from core.exceptions import NotPreprocessedError
from core.models import FiniteDomain, IntervalDomain, build_instance
from core.samples import greedy_tie_instance, pigeonhole_instance
from core.strategies import interval_instances
from dc_oracle.enumeration import enumerate_bound_supports

from .services import find_bound_support, greedy_bound_support, preprocess_bounds


def _intervals(*pairs):
    return tuple(IntervalDomain(lb, ub) for lb, ub in pairs)


class PreprocessBoundsTests(SimpleTestCase):
    def test_greedy_tie_instance(self):
        instance = greedy_tie_instance()
        outcome = preprocess_bounds(instance, instance.initial_bounds())
        self.assertFalse(outcome.failed)
        self.assertEqual(outcome.bounds, _intervals((1, 3), (1, 3), (1, 3), (2, 4)))
        self.assertEqual({c.index for c in outcome.changes}, {0, 1})

    def test_no_edges_leaves_bounds(self):
        instance = build_instance([{1, 2}, {3, 4, 5}])
        outcome = preprocess_bounds(instance, instance.initial_bounds())
        self.assertEqual(outcome.bounds, instance.initial_bounds())
        self.assertEqual(outcome.changes, ())

    def test_weak_condition_does_not_see_strict_chain(self):
        instance = build_instance([{1}, {1}, {1}], [(0, 1), (1, 2)])
        outcome = preprocess_bounds(instance, instance.initial_bounds())
        self.assertFalse(outcome.failed)
        self.assertEqual(outcome.bounds, instance.initial_bounds())

    def test_failure_when_domain_empties(self):
        instance = build_instance([{3, 4}, {1, 2}], [(0, 1)])
        self.assertTrue(preprocess_bounds(instance, instance.initial_bounds()).failed)

    @given(interval_instances(max_n=7, max_d=9))
    @settings(max_examples=80, deadline=None)
    def test_monotone_and_idempotent(self, instance):
        bounds = instance.initial_bounds()
        first = preprocess_bounds(instance, bounds)
        if first.failed:
            return
        for old, new in zip(bounds, first.bounds):
            self.assertGreaterEqual(new.lb, old.lb)
            self.assertLessEqual(new.ub, old.ub)
        second = preprocess_bounds(instance, first.bounds)
        self.assertEqual(second.bounds, first.bounds)


class GreedyBoundSupportTests(SimpleTestCase):
    def test_greedy_tie_instance(self):
        instance = greedy_tie_instance()
        bounds = preprocess_bounds(instance, instance.initial_bounds()).bounds
        self.assertEqual(greedy_bound_support(instance, bounds), (1, 2, 3, 4))

    def test_single_fixed_variable(self):
        instance = build_instance([{5}])
        self.assertEqual(instance.denormalize_assignment(
            greedy_bound_support(instance, instance.initial_bounds())), (5,))

    def test_pigeonhole_is_infeasible(self):
        instance = pigeonhole_instance()
        self.assertIsNone(greedy_bound_support(instance, instance.initial_bounds()))

    def test_requires_preprocessed_bounds(self):
        instance = greedy_tie_instance()
        with self.assertRaises(NotPreprocessedError):
            greedy_bound_support(instance, instance.initial_bounds())

    def test_tie_prefers_non_successor(self):
        # X2 < X1 with equal bounds: X2 must take the smaller value
        instance = build_instance([{1, 2}, {1, 2}], [(1, 0)])
        self.assertEqual(greedy_bound_support(instance, instance.initial_bounds()), (2, 1))

    def test_jumps_over_unused_values(self):
        instance = build_instance([FiniteDomain.from_range(1, 1), FiniteDomain.from_range(6, 7)])
        self.assertEqual(greedy_bound_support(instance, instance.initial_bounds()), (1, 6))

    @given(interval_instances(max_n=6, max_d=8))
    @settings(max_examples=150, deadline=None)
    def test_sound_and_complete_against_box_enumeration(self, instance):
        bounds = instance.initial_bounds()
        found = find_bound_support(instance, bounds)
        exists = next(enumerate_bound_supports(instance, bounds), None) is not None
        self.assertEqual(found is not None, exists)
        if found is not None:
            self.assertTrue(in_box(bounds, found))
            # box supports ignore holes; interval instances have none
            self.assertEqual(check_assignment(instance, found), [])
