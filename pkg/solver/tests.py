import json
import random
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings
from django.urls import reverse
from rest_framework.test import APISimpleTestCase

from core.checker import check_assignment
from core.exceptions import CycleError, InstanceFormatError, InvariantViolation, NodeLimitReached
from core.models import IntervalDomain, PropagationOutcome, build_instance
from core.samples import decomposition_gap_instance, greedy_tie_instance, pigeonhole_instance

from .formats import (
    InstanceFile,
    VariableSpec,
    document_from_data,
    document_to_data,
    parse_document,
    parse_instance_text,
    serialize_instance_text,
)
from .fuzz import _dc_problems, fuzz_differential, generate_instances, shard_seeds
from .generators import (
    K3_X_P2_EDGES,
    K3_X_P2_ORDERINGS,
    gen_exam_timetable,
    gen_graceful_labelling,
    gen_instruction_schedule,
    is_graceful,
    random_dag,
    random_instance,
)
from .routes import BC_ROUTES, BINARY, DECOMP, FAST, propagate
from .search import DESCENDING, LEX, SPLIT, TOPOLOGICAL, UNSAT, SearchConfig, snap, solve

SAMPLE_TEXT = """version 1
# two jobs and a gap
var A [1,3]
var B {2,4,9}
var C [0,5]
prec A B
meta source unit-test
"""


class RouteTests(SimpleTestCase):
    def test_every_bc_route_prunes_the_gap(self):
        instance = decomposition_gap_instance()
        for route in BC_ROUTES:
            with self.subTest(route=route):
                self.assertEqual(propagate(instance, route=route).bounds[2], IntervalDomain(3, 4))

    def test_binary_decomposition_prunes_nothing(self):
        instance = decomposition_gap_instance()
        outcome = propagate(instance, route=BINARY)
        self.assertEqual(outcome.bounds, instance.initial_bounds())
        self.assertEqual(outcome.changes, ())

    def test_unknown_route(self):
        with self.assertRaises(ValueError):
            propagate(greedy_tie_instance(), route="nope")


class SearchTests(SimpleTestCase):
    def test_lex_ascending_on_greedy_tie_instance(self):
        result = solve(greedy_tie_instance(), SearchConfig(var_order=LEX))
        self.assertTrue(result.is_sat)
        self.assertEqual(result.assignment, (1, 2, 3, 4))

    def test_pigeonhole_is_unsat(self):
        self.assertEqual(solve(pigeonhole_instance()).status, UNSAT)

    def test_node_limit(self):
        with self.assertRaises(NodeLimitReached):
            solve(build_instance([range(1, 6)] * 5), SearchConfig(node_limit=2))

    def test_config_validation(self):
        with self.assertRaises(ValueError):
            SearchConfig(node_limit=0)
        with self.assertRaises(ValueError):
            SearchConfig(var_order="random")

    def test_snap_to_holes(self):
        instance = build_instance([{1, 4, 6}, {2, 3}])
        self.assertEqual(
            snap(instance, (IntervalDomain(2, 5), IntervalDomain(1, 3))),
            (IntervalDomain(4, 4), IntervalDomain(2, 3)),
        )
        self.assertIsNone(snap(instance, (IntervalDomain(2, 3), IntervalDomain(2, 3))))

    def test_holey_domains_give_checked_solutions(self):
        instance = build_instance([{1, 5}, {2, 5}, {1, 3, 5}], [(0, 1)])
        for config in (SearchConfig(), SearchConfig(branching=SPLIT), SearchConfig(value_order=DESCENDING)):
            result = solve(instance, config)
            self.assertTrue(result.is_sat)
            self.assertEqual(check_assignment(instance, result.assignment), [])

    def test_deterministic_for_a_seed(self):
        instance = random_instance(random.Random(5), 7, 9)
        config = SearchConfig(seed=11)
        self.assertEqual(solve(instance, config), solve(instance, config))

    def test_routes_agree_on_verdict_and_nodes(self):
        rng = random.Random(17)
        for _ in range(25):
            instance = random_instance(rng, 6, 7)
            results = {route: solve(instance, SearchConfig(route=route)) for route in BC_ROUTES}
            verdicts = {(r.status, r.nodes) for r in results.values()}
            self.assertEqual(len(verdicts), 1, results)
            for result in results.values():
                if result.is_sat:
                    self.assertEqual(check_assignment(instance, result.assignment), [])


class GeneratorTests(SimpleTestCase):
    def test_instruction_schedule(self):
        instance = gen_instruction_schedule(3, [(0, 1), (0, 2)])
        self.assertEqual(instance.initial_bounds(), (IntervalDomain(1, 3),) * 3)
        self.assertEqual(instance.graph.edges, {(0, 1), (0, 2)})

    def test_chain_has_one_schedule(self):
        k = 6
        instance = gen_instruction_schedule(k, [(i, i + 1) for i in range(k - 1)])
        bounds = propagate(instance).bounds
        self.assertEqual(bounds, tuple(IntervalDomain(v, v) for v in range(1, k + 1)))

    def test_cyclic_dependencies(self):
        with self.assertRaises(CycleError):
            gen_instruction_schedule(2, [(0, 1), (1, 0)])

    def test_release_and_due_windows(self):
        instance = gen_instruction_schedule(3, [(0, 1)], windows={1: (1, 2)})
        self.assertEqual(propagate(instance).bounds[:2], (IntervalDomain(1, 1), IntervalDomain(2, 2)))

    def test_random_schedules_solve_as_topological_orders(self):
        rng = random.Random(10)
        for _ in range(5):
            edges = random_dag(rng, 10)
            instance = gen_instruction_schedule(10, edges)
            result = solve(instance, SearchConfig(var_order=TOPOLOGICAL))
            self.assertTrue(result.is_sat)
            self.assertTrue(all(result.assignment[a] < result.assignment[b] for a, b in edges))
            self.assertEqual(sorted(result.assignment), list(range(1, 11)))

    def test_graceful_prism(self):
        instance, side = gen_graceful_labelling(6, K3_X_P2_EDGES, K3_X_P2_ORDERINGS)
        self.assertEqual(instance.n, 6)
        self.assertEqual(instance.graph.edges, set(K3_X_P2_ORDERINGS))
        result = solve(instance, SearchConfig(), side_constraint=side)
        self.assertTrue(result.is_sat)
        labels = instance.denormalize_assignment(result.assignment)
        self.assertTrue(is_graceful(labels, K3_X_P2_EDGES))
        for a, b in K3_X_P2_ORDERINGS:
            self.assertLess(labels[a], labels[b])

    def test_is_graceful(self):
        path = ((0, 1), (1, 2))
        self.assertTrue(is_graceful((0, 2, 1), path))
        self.assertFalse(is_graceful((0, 1, 2), path))

    def test_exam_timetable(self):
        instance = gen_exam_timetable([{1, 2}, {1, 2}, {2, 3}], [(0, 1)], names=["math", "physics", "art"])
        result = solve(instance)
        self.assertEqual(instance.denormalize_assignment(result.assignment), (1, 2, 3))


class FormatTests(SimpleTestCase):
    def test_parse_text(self):
        doc = parse_instance_text(SAMPLE_TEXT)
        self.assertEqual(doc.variables[1], VariableSpec("B", (2, 4, 9)))
        self.assertEqual(doc.precedences, (("A", "B"),))
        self.assertEqual(doc.metadata, {"source": "unit-test"})
        instance = doc.to_instance()
        self.assertEqual(instance.value_offset, -1)
        self.assertEqual(instance.name(2), "C")

    def test_text_and_json_round_trip(self):
        doc = parse_instance_text(SAMPLE_TEXT)
        self.assertEqual(parse_instance_text(serialize_instance_text(doc)), doc)
        self.assertEqual(parse_document(json.dumps(document_to_data(doc))), doc)

    def test_metadata_with_spaces_round_trips(self):
        data = document_to_data(parse_instance_text(SAMPLE_TEXT))
        data["metadata"] = {"note": "two  words here", "source": "unit-test"}
        doc = document_from_data(data)
        self.assertEqual(parse_instance_text(serialize_instance_text(doc)).metadata, doc.metadata)

    def test_metadata_that_cannot_be_written_as_text_is_rejected(self):
        for metadata in ({"note": "see #3"}, {"a b": "x"}, {"#k": "x"}, {"note": "two\nlines"}):
            with self.subTest(metadata=metadata):
                data = document_to_data(parse_instance_text(SAMPLE_TEXT))
                data["metadata"] = metadata
                with self.assertRaises(InstanceFormatError) as ctx:
                    document_from_data(data)
                self.assertIn("metadata", ctx.exception.detail)

    def test_from_instance_keeps_original_values(self):
        doc = parse_instance_text(SAMPLE_TEXT)
        self.assertEqual(InstanceFile.from_instance(doc.to_instance(), doc.metadata), doc)

    def test_invalid_documents(self):
        cases = (
            "var A [1,3]\n",
            "version 1\nvar A [3,1]\n",
            "version 1\nvar A 1..3\n",
            "version 1\nvar A [1,3]\nprec A Z\n",
            "version 1\nvar A [1,3]\nvar A [1,2]\n",
            "version 1\nvariable A [1,3]\n",
            "version 2\nvar A [1,3]\n",
        )
        for text in cases:
            with self.subTest(text=text):
                with self.assertRaises(InstanceFormatError):
                    parse_instance_text(text)

    def test_json_needs_min_and_max(self):
        with self.assertRaises(InstanceFormatError) as ctx:
            document_from_data({"version": 1, "variables": [{"name": "A", "min": 1}]})
        self.assertIn("variables", ctx.exception.detail)


class FuzzTests(SimpleTestCase):
    def test_empty_run(self):
        report = fuzz_differential(seed=1, count=0)
        self.assertTrue(report.ok)
        self.assertEqual(report.checked, 0)

    def test_corrupted_route_is_reported(self):
        def loosened(instance, bounds):
            # drops one unit of pruning on the first variable
            outcome = propagate(instance, bounds)
            if outcome.failed:
                return PropagationOutcome(bounds=bounds)
            first = outcome.bounds[0]
            return PropagationOutcome(bounds=(IntervalDomain(first.lb, first.ub + 1),) + outcome.bounds[1:])

        report = fuzz_differential(seed=3, count=10, max_n=5, max_d=6, routes={"corrupted": loosened})
        self.assertFalse(report.ok)
        self.assertTrue(all(item.kind == "fixpoint" for item in report.discrepancies))
        self.assertTrue(all(item.detail.startswith("corrupted") for item in report.discrepancies))

    def test_shard_seeds(self):
        self.assertEqual(shard_seeds(2, 10, 3), [(2000, 4), (2001, 3), (2002, 3)])
        self.assertEqual(shard_seeds(2, 0, 3), [(2000, 0)])

    def test_bc_routes_agree_on_seeded_instances(self):
        report = fuzz_differential(seed=1, count=1000, max_n=7, max_d=9,
                                   check_decomposition=False, check_oracle=False)
        self.assertEqual(report.discrepancies, [])
        self.assertEqual(report.checked, 1000)

    def test_decomposition_agrees_on_seeded_instances(self):
        report = fuzz_differential(seed=2, count=300, max_n=6, max_d=7, check_oracle=False, audit=False)
        self.assertEqual(report.discrepancies, [])
        self.assertEqual(report.decomposition_checked, 300)

    @override_settings(ALLDIFFPREC={"FUZZ_ORACLE_BOX_CAP": 10 ** 6})
    def test_fast_route_matches_exhaustive_oracle(self):
        report = fuzz_differential(seed=3, count=300, max_n=6, max_d=8,
                                   check_decomposition=False, audit=False)
        self.assertEqual(report.discrepancies, [])
        self.assertEqual(report.oracle_checked, 300)

    def test_generator_mixes_in_domains_with_holes(self):
        instances = list(generate_instances(seed=5, count=200, max_n=5, max_d=6))
        holey = [inst for inst in instances if not all(dom.is_interval() for dom in inst.domains)]
        self.assertTrue(0 < len(holey) < len(instances))
        self.assertEqual(
            [inst.domains for inst in generate_instances(seed=5, count=200, max_n=5, max_d=6)],
            [inst.domains for inst in instances],
        )

    def test_domain_consistency_checked_on_holey_instances(self):
        report = fuzz_differential(seed=4, count=200, max_n=5, max_d=6,
                                   check_decomposition=False, audit=False, holey_share=1.0)
        self.assertEqual(report.discrepancies, [])
        self.assertGreater(report.dc_checked, 0)
        self.assertIn(f"dc={report.dc_checked}", report.summary())

    def test_dc_outside_bounds_is_reported(self):
        instance = build_instance([{1, 3}, {1, 3}])
        narrowed = PropagationOutcome(bounds=(IntervalDomain(1, 1), IntervalDomain(1, 3)))
        problems = _dc_problems(instance, narrowed)
        self.assertEqual(len(problems), 1)
        self.assertTrue(problems[0].startswith("X1: DC domain"))
        self.assertEqual(_dc_problems(instance, PropagationOutcome.failure()), [f"{FAST} fails but the instance has a support"])
        self.assertEqual(_dc_problems(build_instance([{1, 3}] * 3), PropagationOutcome.failure()), [])


class CommandTests(SimpleTestCase):
    def _call(self, *args, **options):
        out = StringIO()
        call_command(*args, stdout=out, **options)
        return out.getvalue()

    def test_propagate_sample(self):
        output = self._call("propagate", sample="decomposition-gap", route=DECOMP)
        self.assertIn("X3 [3,4]", output)
        self.assertIn("changed: X3", output)

    def test_propagate_trace_and_dump(self):
        traced = self._call("propagate", sample="violated-interval", trace=True)
        self.assertIn("X1: X5 claim=4 b=5->3 ub=2", traced)
        dumped = self._call("propagate", sample="decomposition-gap", route=DECOMP, dump=True)
        self.assertTrue(dumped.startswith("# n=3 d=4"))

    def test_propagate_failure_exit_code(self):
        with self.assertRaises(CommandError) as ctx:
            self._call("propagate", sample="pigeonhole")
        self.assertEqual(ctx.exception.returncode, 1)

    def test_propagate_needs_one_source(self):
        with self.assertRaises(CommandError) as ctx:
            self._call("propagate")
        self.assertEqual(ctx.exception.returncode, 2)

    def test_propagate_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "jobs.txt"
            path.write_text(SAMPLE_TEXT)
            output = self._call("propagate", str(path), route=FAST)
        self.assertIn("A [1,3]", output)

    def test_cyclic_file_is_unsatisfiable(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "loop.txt"
            path.write_text("version 1\nvar A [1,3]\nvar B [1,3]\nprec A B\nprec B A\n")
            with self.assertRaises(CommandError) as ctx:
                self._call("propagate", str(path))
        self.assertEqual(ctx.exception.returncode, 1)

    def test_unexpected_error_is_logged_and_reraised(self):
        target = "solver.management.commands.propagate.make_propagator"
        with mock.patch(target, side_effect=RuntimeError("boom")):
            with self.assertLogs("solver.cli", level="ERROR") as logs:
                with self.assertRaises(RuntimeError):
                    self._call("propagate", sample="greedy-tie")
        self.assertIn("Unexpected error in propagate", logs.output[0])

    def test_invariant_violation_exit_code(self):
        target = "solver.management.commands.propagate.make_propagator"
        with mock.patch(target, side_effect=InvariantViolation("b moved past ub")):
            with self.assertLogs("solver.cli", level="ERROR"):
                with self.assertRaises(CommandError) as ctx:
                    self._call("propagate", sample="greedy-tie")
        self.assertEqual(ctx.exception.returncode, 3)

    def test_solve(self):
        output = self._call("solve", sample="greedy-tie", var_order=LEX)
        self.assertIn("X4 = 4", output)
        with self.assertRaises(CommandError) as ctx:
            self._call("solve", sample="pigeonhole")
        self.assertEqual(ctx.exception.returncode, 1)

    def test_dc(self):
        output = self._call("dc", sample="decomposition-gap")
        self.assertIn("X3 [3,4]", output)
        with self.assertRaises(CommandError) as ctx:
            self._call("dc", sample="decomposition-gap", cap=5)
        self.assertEqual(ctx.exception.returncode, 3)

    def test_encode_sat(self):
        with tempfile.TemporaryDirectory() as tmp:
            cnf = Path(tmp) / "one.cnf"
            cnf.write_text("p cnf 1 1\n1 1 1 0\n")
            output = self._call("encode_sat", str(cnf), check=True)
            self.assertIn("version 1", output)
            self.assertIn("satisfiable", output)

            cnf.write_text("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
            with self.assertRaises(CommandError) as ctx:
                self._call("encode_sat", str(cnf), check=True)
            self.assertEqual(ctx.exception.returncode, 1)

    def test_fuzz_and_bench(self):
        self.assertIn("discrepancies=0", self._call("fuzz", count=5, max_n=4, max_d=5))
        self.assertIn("full[s]", self._call("bench", max_n=4, step=2, repeat=1))


class ApiTests(APISimpleTestCase):
    def _instance(self):
        return {
            "variables": [
                {"name": "X1", "min": 1, "max": 3},
                {"name": "X2", "min": 1, "max": 3},
                {"name": "X3", "min": 2, "max": 4},
            ],
            "precedences": [["X1", "X3"], ["X2", "X3"]],
        }

    def test_propagate(self):
        response = self.client.post(reverse("propagate"), {"instance": self._instance()}, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data["status"], "ok")
        self.assertEqual(response.data["bounds"][2], {"name": "X3", "min": 3, "max": 4})
        self.assertEqual(response.data["changed"], ["X3"])

    def test_solve(self):
        body = {"instance": self._instance(), "var_order": "lex"}
        response = self.client.post(reverse("solve"), body, format="json")
        self.assertEqual(response.status_code, 200)
        self.assertEqual(response.data["status"], "sat")
        self.assertEqual(response.data["assignment"], {"X1": 1, "X2": 2, "X3": 3})

    def test_cycle_is_rejected(self):
        instance = self._instance()
        instance["precedences"].append(["X3", "X1"])
        response = self.client.post(reverse("propagate"), {"instance": instance}, format="json")
        self.assertEqual(response.status_code, 400)

    def test_validation_errors(self):
        response = self.client.post(reverse("solve"), {"instance": {"variables": []}}, format="json")
        self.assertEqual(response.status_code, 400)
        response = self.client.post(
            reverse("propagate"), {"instance": self._instance(), "route": "magic"}, format="json"
        )
        self.assertEqual(response.status_code, 400)

    def test_unexpected_error_is_logged(self):
        with mock.patch("solver.views.make_propagator", side_effect=RuntimeError("boom")):
            with self.assertLogs("solver.views", level="ERROR") as logs:
                response = self.client.post(reverse("propagate"), {"instance": self._instance()}, format="json")
        self.assertEqual(response.status_code, 500)
        self.assertEqual(response.data, {"detail": "internal error"})
        self.assertIn("Unexpected error in propagate", logs.output[0])
