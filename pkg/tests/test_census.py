import json
import os
import unittest
from dataclasses import replace

from algebraic_degree.census import (
    STATUS_MATCH,
    STATUS_NOT_ZERO_DIMENSIONAL,
    STATUS_TIMED_OUT,
    CensusOptions,
    CensusReport,
    compare_formulations,
    emit_report,
    run_census,
    run_census_batch,
)
from algebraic_degree.degree_formula import ConeShape, DegreeShape
from algebraic_degree.field_arith import PrimeField
from algebraic_degree.problem_file import parse_problem_text
from algebraic_degree.problems import GenConfig, generate_instance

F = PrimeField(2147483647)
STRETCH = os.environ.get("ALGEBRAIC_DEGREE_STRETCH") == "1"


def config(problem_class, shape, seed=1338):
    return GenConfig(seed=seed, field=F, problem_class=problem_class, shape=shape)


class TestCensus(unittest.TestCase):
    def assertMatches(self, report, predicted):
        self.assertEqual(report.predicted_degree, predicted)
        self.assertTrue(report.zero_dimensional)
        self.assertEqual(report.computed_count, predicted)
        self.assertTrue(report.match)
        self.assertEqual(report.status, STATUS_MATCH)

    def test_general(self):
        report = run_census(config("general", DegreeShape(2, 1, (2, 2))))
        self.assertMatches(report, 4)
        self.assertEqual(report.seed, 1338)
        self.assertEqual(report.prime, F.p)
        self.assertEqual(report.degrees, (2, 2))
        self.assertEqual(report.diagnostic, "")

    def test_unconstrained(self):
        self.assertMatches(run_census(config("unconstrained", DegreeShape(2, 0, (3,)))), 4)
        self.assertMatches(run_census(config("unconstrained", DegreeShape(3, 0, (3,)))), 8)

    def test_qcqp(self):
        self.assertMatches(run_census(config("qcqp", DegreeShape(3, 2, (2, 2, 2)))), 12)
        self.assertMatches(run_census(config("qcqp", DegreeShape(3, 0, (2,)))), 1)
        self.assertMatches(run_census(config("qcqp", DegreeShape(4, 2, (2, 2, 2)))), 24)

    def test_socp(self):
        report = run_census(config("socp", ConeShape(4, 1, 2, (3,))))
        self.assertMatches(report, 2)
        self.assertEqual(report.k, 1)
        self.assertEqual(report.p, 2)

    def test_socp_lp_reduction(self):
        report = run_census(config("socp", ConeShape(3, 2, 2)))
        self.assertMatches(report, 1)
        # the requested cone shape, not the n generated linear constraints
        self.assertEqual(report.m, 2)
        self.assertEqual(report.degrees, (1, 1, 1))
        self.assertIn("solved as an LP with 3 linear constraints", report.diagnostic)

    def test_socp_with_too_few_rows_is_flagged(self):
        report = run_census(config("socp", ConeShape(4, 1, 2, (2,))))
        self.assertEqual(report.predicted_degree, 2)
        self.assertFalse(report.match)
        self.assertIn("cone rows too few", report.diagnostic)

    def test_pocp(self):
        self.assertMatches(run_census(config("pocp", ConeShape(3, 0, 1, (3,), p=3))), 12)

    def test_minimal_polynomials(self):
        options = CensusOptions(minpoly=True)
        report = run_census(config("general", DegreeShape(2, 1, (2, 2))), options)
        self.assertMatches(report, 4)
        self.assertEqual(report.minpoly_degrees, (4, 4))

    def test_parsed_problem(self):
        spec = parse_problem_text("objective: x1 + 2*x2\nconstraint: x1^2 + x2^2 - 1\n", F)
        report = run_census(spec)
        self.assertMatches(report, 2)
        self.assertEqual(report.retries, 0)
        self.assertIsNone(report.seed)

    def test_not_zero_dimensional(self):
        spec = parse_problem_text("variables: 2\nobjective: x1^2\n", F)
        report = run_census(spec)
        self.assertEqual(report.status, STATUS_NOT_ZERO_DIMENSIONAL)
        self.assertFalse(report.match)
        self.assertIsNone(report.computed_count)
        self.assertIn("not zero-dimensional", report.diagnostic)

    def test_timeout(self):
        report = run_census(
            config("qcqp", DegreeShape(3, 2, (2, 2, 2))), CensusOptions(budget=1e-9)
        )
        self.assertEqual(report.status, STATUS_TIMED_OUT)
        self.assertFalse(report.match)

    def test_batch(self):
        reports = run_census_batch(config("general", DegreeShape(2, 1, (2, 2))), repeat=3)
        self.assertEqual([r.seed for r in reports], [1338, 1339, 1340])
        self.assertTrue(all(r.match for r in reports))

    def test_deterministic(self):
        options = CensusOptions(minpoly=True)
        first = run_census(config("general", DegreeShape(2, 1, (3, 2))), options)
        second = run_census(config("general", DegreeShape(2, 1, (3, 2))), options)
        self.assertEqual(replace(first, wall_ms=0), replace(second, wall_ms=0))

    @unittest.skipUnless(STRETCH, "set ALGEBRAIC_DEGREE_STRETCH=1 for the large census")
    def test_degree_108(self):
        options = CensusOptions(budget=3600, minpoly=True)
        report = run_census(config("general", DegreeShape(3, 2, (5, 4, 3))), options)
        self.assertMatches(report, 108)
        self.assertEqual(report.minpoly_degrees[0], 108)

    @unittest.skipUnless(STRETCH, "set ALGEBRAIC_DEGREE_STRETCH=1 for the large census")
    def test_qcqp_80(self):
        self.assertMatches(
            run_census(config("qcqp", DegreeShape(5, 3, (2, 2, 2, 2))), CensusOptions(budget=3600)), 80
        )


class TestFormulations(unittest.TestCase):
    def test_plane_conics(self):
        spec = generate_instance(config("general", DegreeShape(2, 1, (2, 2))))
        comparison = compare_formulations(spec)
        self.assertEqual(comparison.status, STATUS_MATCH)
        self.assertEqual(comparison.lagrange_count, 4)
        self.assertEqual(comparison.minor_count, 4)
        self.assertEqual(comparison.minor_minpoly_degree, 4)
        self.assertTrue(comparison.agree)

    def test_lagrange_and_minors_agree(self):
        spec = generate_instance(config("general", DegreeShape(3, 1, (2, 2))))
        comparison = compare_formulations(spec)
        self.assertEqual(comparison.lagrange_count, 6)
        self.assertEqual(comparison.minor_count, 6)
        self.assertEqual(comparison.lagrange_minpoly_degree, 6)
        self.assertTrue(comparison.agree)

    def test_x_projections_coincide(self):
        shapes = [
            DegreeShape(2, 1, (2, 2)),
            DegreeShape(2, 1, (3, 2)),
            DegreeShape(3, 1, (2, 2)),
            DegreeShape(3, 2, (2, 2, 2)),
        ]
        for shape in shapes:
            for seed in (1338, 1339):
                spec = generate_instance(config("general", shape, seed))
                comparison = compare_formulations(spec)
                self.assertEqual(comparison.status, STATUS_MATCH, (shape, seed))
                self.assertTrue(comparison.minors_in_lagrange_ideal)
                self.assertEqual(comparison.lagrange_minpoly, comparison.minor_minpoly)
                self.assertTrue(comparison.x_projections_agree)

    def test_not_zero_dimensional(self):
        spec = parse_problem_text("variables: 2\nobjective: x1^2\n", F)
        comparison = compare_formulations(spec)
        self.assertEqual(comparison.status, STATUS_NOT_ZERO_DIMENSIONAL)
        self.assertIsNone(comparison.lagrange_count)
        self.assertFalse(comparison.agree)
        self.assertFalse(comparison.x_projections_agree)

    def test_timeout(self):
        spec = generate_instance(config("general", DegreeShape(2, 1, (2, 2))))
        comparison = compare_formulations(spec, CensusOptions(budget=1e-9))
        self.assertEqual(comparison.status, STATUS_TIMED_OUT)
        self.assertFalse(comparison.agree)
        self.assertEqual(comparison.to_dict()["status"], STATUS_TIMED_OUT)


class TestReport(unittest.TestCase):
    def report(self, **changes):
        fields = dict(
            problem_class="general",
            n=2,
            m=1,
            k=None,
            p=None,
            degrees=(2, 2),
            prime=F.p,
            seed=1338,
            predicted_degree=4,
            zero_dimensional=True,
            computed_count=4,
            minpoly_degrees=None,
            match=True,
            retries=0,
            wall_ms=12,
            status=STATUS_MATCH,
        )
        fields.update(changes)
        return CensusReport(**fields)

    def test_match_invariant(self):
        with self.assertRaises(ValueError):
            self.report(computed_count=3)
        with self.assertRaises(ValueError):
            self.report(zero_dimensional=False)
        self.report(computed_count=3, match=False, status="mismatch")

    def test_json(self):
        data = json.loads(emit_report(self.report(predicted_degree=10**30, computed_count=None, match=False)))
        self.assertEqual(data["class"], "general")
        self.assertEqual(data["predicted_degree"], "1" + "0" * 30)
        self.assertEqual(data["degrees"], [2, 2])
        self.assertIsNone(data["computed_count"])

    def test_json_list(self):
        data = json.loads(emit_report([self.report(), self.report(seed=1339)]))
        self.assertEqual([d["seed"] for d in data], [1338, 1339])

    def test_text(self):
        text = emit_report(self.report(), "text").decode("utf-8")
        self.assertIn("predicted_degree", text)
        self.assertIn("match", text)
        with self.assertRaises(ValueError):
            emit_report(self.report(), "xml")


if __name__ == "__main__":
    unittest.main()
