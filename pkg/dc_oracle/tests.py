import random

from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings

from bc_fast.propagator import propagate_bc
from core.checker import check_assignment
from core.exceptions import ExplosionError, MalformedFormulaError
from core.models import FiniteDomain, IntervalDomain, build_instance
from core.samples import decomposition_gap_instance, greedy_tie_instance, pigeonhole_instance
from core.strategies import holey_instances

from .dimacs import CnfFormula, parse_dimacs, random_3cnf
from .enumeration import (
    bound_support_hull,
    enforce_dc,
    enumerate_bound_supports,
    enumerate_supports,
    support_exists,
)
from .reduction import encode_3sat

UNBOUNDED = float("inf")


class EnumerateSupportsTests(SimpleTestCase):
    def test_gap_instance_supports(self):
        supports = set(enumerate_supports(decomposition_gap_instance()))
        self.assertIn((1, 2, 3), supports)
        self.assertFalse(any(s[2] == 2 for s in supports))

    def test_single_value_domain(self):
        instance = build_instance([{7}])
        self.assertEqual(list(enumerate_supports(instance)), [(1,)])

    def test_greedy_tie_assignment_is_a_support(self):
        self.assertIn((1, 2, 3, 4), set(enumerate_supports(greedy_tie_instance())))

    def test_every_yield_passes_the_checker(self):
        instance = build_instance([{1, 3, 5}, {2, 3}, {1, 4, 5}], [(1, 2)])
        supports = list(enumerate_supports(instance))
        self.assertTrue(supports)
        for support in supports:
            self.assertEqual(check_assignment(instance, support), [])

    def test_cap_is_enforced(self):
        instance = build_instance([FiniteDomain.from_range(1, 10)] * 3)
        with self.assertRaises(ExplosionError) as ctx:
            list(enumerate_supports(instance, cap=999))
        self.assertEqual(ctx.exception.size, 1000)

    @override_settings(ALLDIFFPREC={"DC_ENUMERATION_CAP": 10})
    def test_cap_comes_from_settings(self):
        with self.assertRaises(ExplosionError):
            support_exists(build_instance([{1, 2, 3, 4}] * 2))

    def test_bound_supports_ignore_holes(self):
        instance = build_instance([{1, 3}, {1, 3}])
        boxed = set(enumerate_bound_supports(instance, instance.initial_bounds()))
        self.assertIn((1, 2), boxed)
        self.assertNotIn((1, 2), set(enumerate_supports(instance)))

    def test_hull(self):
        instance = decomposition_gap_instance()
        hull = bound_support_hull(instance, instance.initial_bounds())
        self.assertEqual(hull, (IntervalDomain(1, 3), IntervalDomain(1, 3), IntervalDomain(3, 4)))
        self.assertIsNone(bound_support_hull(pigeonhole_instance(), pigeonhole_instance().initial_bounds()))


class EnforceDcTests(SimpleTestCase):
    def test_gap_instance(self):
        outcome = enforce_dc(decomposition_gap_instance())
        self.assertFalse(outcome.failed)
        self.assertEqual(
            [dom.values for dom in outcome.domains],
            [(1, 2, 3), (1, 2, 3), (3, 4)],
        )

    def test_pigeonhole_fails(self):
        self.assertTrue(enforce_dc(pigeonhole_instance()).failed)

    @given(holey_instances(max_n=5, max_d=7))
    @settings(max_examples=100, deadline=None)
    def test_dc_is_inside_bc(self, instance):
        bc = propagate_bc(instance, instance.initial_bounds())
        dc = enforce_dc(instance)
        if bc.failed:
            self.assertTrue(dc.failed)
            return
        if dc.failed:
            return
        for dom, box in zip(dc.domains, bc.bounds):
            self.assertGreaterEqual(dom.min, box.lb)
            self.assertLessEqual(dom.max, box.ub)


class DimacsTests(SimpleTestCase):
    def test_parse(self):
        text = "c example\np cnf 3 2\n1 -2 3 0\n-1\n2 3 0\n"
        formula = parse_dimacs(text)
        self.assertEqual(formula, CnfFormula(3, ((1, -2, 3), (-1, 2, 3))))
        self.assertEqual(parse_dimacs(formula.to_dimacs()), formula)

    def test_percent_terminator(self):
        formula = parse_dimacs("p cnf 1 1\n1 1 1 0\n%\n0\n")
        self.assertEqual(formula.clauses, ((1, 1, 1),))

    def test_malformed(self):
        for text in (
            "1 2 0\n",
            "p cnf 2 1\n1 2\n",
            "p cnf 2 2\n1 2 0\n",
            "p cnf 2 1\n1 3 0\n",
            "p sat 2 1\n1 0\n",
            "p cnf 2 1\n1 x 0\n",
        ):
            with self.subTest(text=text):
                with self.assertRaises(MalformedFormulaError):
                    parse_dimacs(text)

    def test_truth_table(self):
        self.assertTrue(CnfFormula(1, ((1, 1, 1),)).is_satisfiable())
        self.assertFalse(CnfFormula(1, ((1, 1, 1), (-1, -1, -1))).is_satisfiable())

    def test_random_3cnf_has_no_tautology(self):
        rng = random.Random(3)
        formula = random_3cnf(rng, 2, 20)
        self.assertEqual(formula.n_clauses, 20)
        for clause in formula.clauses:
            self.assertEqual(len(clause), 3)
            self.assertFalse(any(-lit in clause for lit in clause))


class Encode3SatTests(SimpleTestCase):
    def test_single_clause_shape(self):
        instance = encode_3sat(CnfFormula(1, ((1, 1, 1),)))
        self.assertEqual(instance.n, 5)
        self.assertEqual(instance.value_offset, 0)
        self.assertEqual([dom.values for dom in instance.domains[:2]], [(1, 3), (1, 3)])
        self.assertEqual([dom.values for dom in instance.domains[2:]], [(2, 4, 5)] * 3)
        self.assertEqual(instance.graph.edges, {(1, 2), (1, 3), (1, 4)})
        self.assertTrue(support_exists(instance))

    def test_contradiction_has_no_support(self):
        instance = encode_3sat(CnfFormula(1, ((1, 1, 1), (-1, -1, -1))))
        self.assertFalse(support_exists(instance))

    def test_negated_literal_links_first_truth_variable(self):
        instance = encode_3sat(CnfFormula(2, ((1, -2, 1),)))
        self.assertEqual(instance.graph.edges, {(1, 4), (2, 5), (1, 6)})

    def test_rejects_bad_clauses(self):
        with self.assertRaises(MalformedFormulaError):
            encode_3sat(CnfFormula(2, ((1, 2),)))
        with self.assertRaises(MalformedFormulaError):
            encode_3sat(CnfFormula(2, ((1, -1, 2),)))

    def test_random_formulas_match_truth_table(self):
        rng = random.Random(2024)
        for _ in range(50):
            formula = random_3cnf(rng, rng.randint(1, 4), rng.randint(1, 5))
            instance = encode_3sat(formula)
            self.assertTrue(instance.graph.is_flat())
            self.assertEqual(
                support_exists(instance, cap=UNBOUNDED),
                formula.is_satisfiable(),
                formula.to_dimacs(),
            )
