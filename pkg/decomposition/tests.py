from django.test import SimpleTestCase
from hypothesis import given, settings

from bc_fast.propagator import propagate_bc
from core.models import IntervalDomain, build_instance
from core.samples import (
    decomposition_gap_instance,
    greedy_tie_instance,
    pigeonhole_instance,
    violated_interval_instance,
)
from core.strategies import interval_instances

from .encoder import dump_encoding, encode
from .engine import propagate_decomposition, propagate_store
from .models import (
    CHANNEL_A,
    INTERVAL_SUM,
    PREDECESSOR_SUM,
    STRICT_LESS,
    SUCCESSOR_SUM,
    DecompConstraint,
)


def _intervals(*pairs):
    return tuple(IntervalDomain(lb, ub) for lb, ub in pairs)


class EncodeTests(SimpleTestCase):
    def test_counts_without_edges(self):
        encoding = encode(build_instance([{1, 2}, {1, 2}]))
        self.assertEqual(encoding.count("B"), 4)
        self.assertEqual(encoding.count("A"), 6)
        self.assertEqual(encoding.constraints_of(STRICT_LESS), [])

    def test_single_variable_has_no_guarded_sums(self):
        encoding = encode(build_instance([{3, 4, 5}]))
        self.assertEqual(encoding.constraints_of(SUCCESSOR_SUM), [])
        self.assertEqual(encoding.constraints_of(PREDECESSOR_SUM), [])

    def test_one_strict_less_per_closure_edge(self):
        instance = build_instance([{1, 2, 3}] * 3, [(0, 1), (1, 2)])
        edges = {c.variables for c in encode(instance).constraints_of(STRICT_LESS)}
        self.assertEqual(edges, {(0, 1), (1, 2), (0, 2)})

    def test_sum_constants(self):
        encoding = encode(violated_interval_instance())
        for c in encoding.constraints_of(INTERVAL_SUM):
            _, _, l, u = encoding.booleans[c.variables[0] - encoding.n].key
            self.assertEqual(c.constant, u - l + 1)
        for c in encoding.constraints_of(SUCCESSOR_SUM) + encoding.constraints_of(PREDECESSOR_SUM):
            _, _, l, u = encoding.booleans[c.guard - encoding.n].key
            self.assertEqual(c.constant, u - l)

    def test_channel_arity(self):
        for c in encode(greedy_tie_instance()).constraints_of(CHANNEL_A):
            self.assertEqual(len(c.variables), 2 if c.constant == 1 else 3)

    def test_constraint_shape_is_checked(self):
        with self.assertRaises(ValueError):
            DecompConstraint(STRICT_LESS, (0, 1, 2))
        with self.assertRaises(ValueError):
            DecompConstraint(SUCCESSOR_SUM, (3, 4), constant=1)

    def test_dump_single_variable(self):
        self.assertEqual(
            dump_encoding(encode(build_instance([{5}]))),
            "# n=1 d=1 B=1 A=1 constraints=2\n"
            "channel_Bil B(X1,1) <-> X1 <= 1\n"
            "channel_Ailu A(X1,1,1) <-> B(X1,1)\n",
        )

    def test_dump_guarded_sums(self):
        lines = dump_encoding(encode(build_instance([{1, 2}, {1, 2}], [(0, 1)]))).splitlines()
        self.assertIn("strict_less X1 < X2", lines)
        self.assertIn("successor_sum A(X1,1,1) -> B(X2,1) <= 0", lines)
        self.assertIn("predecessor_sum A(X2,1,1) -> 1 <= 0", lines)
        self.assertIn("channel_Ailu A(X1,2,2) <-> not B(X1,1) and B(X1,2)", lines)


class PropagateDecompositionTests(SimpleTestCase):
    def test_gap_instance(self):
        instance = decomposition_gap_instance()
        outcome = propagate_decomposition(encode(instance), instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 3), (1, 3), (3, 4)))

    def test_violated_interval_instance(self):
        instance = violated_interval_instance()
        outcome = propagate_decomposition(encode(instance), instance.initial_bounds())
        self.assertEqual(outcome.bounds[0], IntervalDomain(1, 2))

    def test_greedy_tie_instance(self):
        instance = greedy_tie_instance()
        outcome = propagate_decomposition(encode(instance), instance.initial_bounds())
        self.assertEqual(outcome.bounds, _intervals((1, 2), (1, 2), (3, 3), (4, 4)))

    def test_pigeonhole_fails(self):
        instance = pigeonhole_instance()
        self.assertTrue(propagate_decomposition(encode(instance), instance.initial_bounds()).failed)

    def test_fixed_assignment_fixes_every_boolean(self):
        instance = build_instance([{1, 2, 3}] * 3, [(0, 2)])
        store = propagate_store(encode(instance), _intervals((1, 1), (3, 3), (2, 2)))
        self.assertIsNotNone(store)
        self.assertTrue(all(lb == ub for lb, ub in zip(store.lbs, store.ubs)))

    @given(interval_instances(max_n=6, max_d=7))
    @settings(max_examples=80, deadline=None)
    def test_channels_are_coherent_at_fixpoint(self, instance):
        encoding = encode(instance)
        store = propagate_store(encoding, instance.initial_bounds())
        if store is None:
            return
        for var in encoding.booleans:
            lb, ub = store.lbs[var.id], store.ubs[var.id]
            i = var.key[1]
            if var.key[0] == "B":
                l = var.key[2]
                if lb == 1:
                    self.assertLessEqual(store.ubs[i], l)
                if ub == 0:
                    self.assertGreaterEqual(store.lbs[i], l + 1)
            elif lb == 1:
                _, _, l, u = var.key
                self.assertGreaterEqual(store.lbs[i], l)
                self.assertLessEqual(store.ubs[i], u)

    @given(interval_instances(max_n=6, max_d=7))
    @settings(max_examples=100, deadline=None)
    def test_matches_fast_propagator(self, instance):
        bounds = instance.initial_bounds()
        expected = propagate_bc(instance, bounds)
        outcome = propagate_decomposition(encode(instance), bounds)
        self.assertEqual(outcome.failed, expected.failed)
        self.assertEqual(outcome.bounds, expected.bounds)
