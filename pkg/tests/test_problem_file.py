import os
import tempfile
import unittest

from algebraic_degree.field_arith import PrimeField
from algebraic_degree.polyring import parse_polynomial
from algebraic_degree.problem_file import (
    ProblemFileError,
    parse_problem_file,
    parse_problem_text,
    serialize_problem,
    write_problem_file,
)
from algebraic_degree.problems import GenConfig, gen_general

F = PrimeField(2147483647)

CIRCLE = """\
# linear objective on the unit circle
class: general
seed: 5
objective: x1 + 2*x2
constraint: x1^2 + x2^2 - 1   # radius 1
"""


class TestParse(unittest.TestCase):
    def test_circle(self):
        spec = parse_problem_text(CIRCLE, F)
        self.assertEqual(spec.n, 2)
        self.assertEqual(spec.m, 1)
        self.assertEqual(spec.degrees, (1, 2))
        self.assertEqual(spec.seed, 5)
        self.assertEqual(spec.problem_class, "general")

    def test_no_constraints(self):
        spec = parse_problem_text("objective: x1^2\n", F)
        self.assertEqual((spec.n, spec.m, spec.degrees), (1, 0, (2,)))

    def test_variables_header(self):
        spec = parse_problem_text("variables: 4\nobjective: x1^2 + x3\n", F)
        self.assertEqual(spec.n, 4)
        spec = parse_problem_text("objective: x3 + x1\n", F)
        self.assertEqual(spec.n, 3)

    def test_coefficient_before_variable(self):
        spec = parse_problem_text("objective: 3x2 + x1^2\n", F)
        self.assertEqual(spec.n, 2)
        self.assertEqual(spec.objective, parse_polynomial("3*x2 + x1^2", spec.ring))
        self.assertEqual(parse_problem_text("objective: 2x1 + 5x3^2\n", F).n, 3)

    def test_worked_example_objective(self):
        text = "objective: 47 x1^5 + 5 x1 x2^4 - 92 x1 x3^2\nconstraint: x1^4 - 1\nconstraint: x3^3 - x2\n"
        spec = parse_problem_text(text, F)
        self.assertEqual(spec.degrees, (5, 4, 3))

    def test_syntax_error_position(self):
        with self.assertRaises(ProblemFileError) as ctx:
            parse_problem_text("objective: x1 + $\n", F)
        self.assertEqual(ctx.exception.line, 1)
        self.assertEqual(ctx.exception.column, 17)
        with self.assertRaises(ProblemFileError) as ctx:
            parse_problem_text("objective: x1\nconstraint: x1 +* x2\n", F)
        self.assertEqual(ctx.exception.line, 2)

    def test_structural_errors(self):
        bad = [
            "constraint: x1 - 1\n",
            "objective: x1\nobjective: x2\n",
            "objective: x1\nbudget: 4\n",
            "objective: x1\nconstraint: 5\n",
            "objective: x1\nnonsense\n",
            "variables: zero\nobjective: x1\n",
            "variables: 1\nobjective: x2\n",
        ]
        for text in bad:
            with self.assertRaises(ProblemFileError, msg=text):
                parse_problem_text(text, F)

    def test_missing_file(self):
        with self.assertRaises(ProblemFileError):
            parse_problem_file("/nonexistent/problem.txt", F)

    def test_invalid_utf8(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "latin.txt")
            with open(path, "wb") as f:
                f.write(b"objective: x1^2 \xff\xfe\n")
            with self.assertRaises(ProblemFileError) as ctx:
                parse_problem_file(path, F)
            self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 17))
            self.assertIn("0xff", str(ctx.exception))

            with open(path, "wb") as f:
                f.write(b"# caf\xc3\xa9\nobjective: x1\nconstraint: x1 - \xe9\n")
            with self.assertRaises(ProblemFileError) as ctx:
                parse_problem_file(path, F)
            self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 18))


class TestSerialize(unittest.TestCase):
    def test_generated_instance_survives_a_file(self):
        spec = gen_general(3, (3, 2), GenConfig(seed=1338, field=F))
        text = serialize_problem(spec)
        self.assertTrue(text.startswith("# n=3 m=1 degrees=3,2\n"))
        self.assertIn("seed: 1338", text)
        self.assertEqual(parse_problem_text(text, F), spec)

    def test_write_and_read(self):
        spec = parse_problem_text(CIRCLE, F)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "sub", "circle.txt")
            write_problem_file(spec, path)
            self.assertEqual(parse_problem_file(path, F), spec)


if __name__ == "__main__":
    unittest.main()
