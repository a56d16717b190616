import random
import unittest

from algebraic_degree.field_arith import PrimeField
from algebraic_degree.polyring import (
    GREVLEX,
    LEX,
    DegreeError,
    MonomialOrdering,
    PolynomialError,
    PolynomialRing,
    PolynomialSyntaxError,
    RingMismatchError,
    UnknownVariableError,
    dehomogenize,
    divide_exact,
    format_polynomial,
    homogenize,
    monomial_lcm,
    parse_polynomial,
    poly_arith,
)
from algebraic_degree.problems import GenConfig
from algebraic_degree.problems.problem_utils import make_rng, random_dense

F = PrimeField(2147483647)
R3 = PolynomialRing(3, F)


def P(text, ring=R3):
    return parse_polynomial(text, ring)


def random_poly(rng, ring, degree, terms=6):
    poly = ring.zero()
    for _ in range(terms):
        exps = [0] * ring.nvars
        for _ in range(rng.randrange(degree + 1)):
            exps[rng.randrange(ring.nvars)] += 1
        poly = poly + ring.from_terms({tuple(exps): rng.randrange(1, F.p)})
    return poly


class TestOrdering(unittest.TestCase):
    def test_lex_versus_grevlex(self):
        x1, x2_5 = (1, 0, 0), (0, 5, 0)
        self.assertEqual(LEX.compare(x1, x2_5), 1)
        self.assertEqual(GREVLEX.compare(x1, x2_5), -1)

    def test_grevlex_ties_break_on_last_variable(self):
        # x1*x2^2 > x1^2*x3 in grevlex
        self.assertEqual(GREVLEX.compare((1, 2, 0), (2, 0, 1)), 1)
        self.assertEqual(LEX.compare((1, 2, 0), (2, 0, 1)), -1)

    def test_permuted_lex(self):
        order = MonomialOrdering("lex", (2, 1, 0))
        self.assertEqual(order.compare((0, 0, 1), (5, 0, 0)), 1)

    def test_invalid(self):
        with self.assertRaises(PolynomialError):
            MonomialOrdering("deglex")
        with self.assertRaises(PolynomialError):
            MonomialOrdering("lex", (0, 0, 1))

    def test_lcm_overflow(self):
        with self.assertRaises(DegreeError):
            monomial_lcm((40000, 0), (0, 1))


class TestArithmetic(unittest.TestCase):
    def test_binomial_square(self):
        self.assertEqual(P("(x1 + x2)^2"), P("x1^2 + 2*x1*x2 + x2^2"))

    def test_ring_axioms(self):
        rng = random.Random(1338)
        for _ in range(20):
            f, g, h = (random_poly(rng, R3, 3) for _ in range(3))
            self.assertEqual(f * (g + h), f * g + f * h)
            self.assertEqual((f - g) + g, f)
            self.assertTrue((f - f).is_zero())

    def test_coefficients_reduce_mod_p(self):
        self.assertTrue(P("2147483647*x1").is_zero())
        self.assertEqual(P("-1").constant_term(), F.p - 1)

    def test_ring_mismatch(self):
        R2 = PolynomialRing(2, F)
        with self.assertRaises(RingMismatchError):
            P("x1") + P("x1", R2)
        with self.assertRaises(RingMismatchError):
            poly_arith(P("x1"), P("x1", R2), "mul")

    def test_power_overflow(self):
        with self.assertRaises(DegreeError):
            P("x1") ** 40000

    def test_product_overflow(self):
        big = P("x1^20000")
        with self.assertRaises(DegreeError):
            big * big
        with self.assertRaises(DegreeError):
            big.mul_term(1, (20000, 0, 0))
        self.assertEqual((big * P("x1^12767")).leading_monomial(), (32767, 0, 0))

    def test_degrees(self):
        f = P("x1^3*x2 + x3 + 4")
        self.assertEqual(f.total_degree(), 4)
        self.assertEqual(f.degree_in(0), 3)
        self.assertFalse(f.is_homogeneous())
        self.assertEqual(f.leading_monomial(), (3, 1, 0))
        self.assertEqual(P("5*x1^2 + x2").monic(), P("x1^2 + 858993459*x2"))


class TestCalculus(unittest.TestCase):
    def test_partial_derivative(self):
        self.assertEqual(P("x1^3*x2 + x3").partial_derivative(0), P("3*x1^2*x2"))
        self.assertTrue(P("x2").partial_derivative(0).is_zero())

    def test_evaluate(self):
        self.assertEqual(P("x1^2 + x2*x3 - 1").evaluate([2, 3, 4]), 15)
        self.assertEqual(P("x1 - 3").evaluate([1, 0, 0]), F.p - 2)

    def test_homogenize(self):
        R2 = PolynomialRing(2, F)
        f = P("x1^2 + x2 + 1", R2)
        h = homogenize(f, 2)
        self.assertEqual(h.ring.nvars, 3)
        self.assertEqual(h.terms, {(0, 2, 0): 1, (1, 0, 1): 1, (2, 0, 0): 1})
        self.assertTrue(h.is_homogeneous())
        self.assertEqual(dehomogenize(h), f)

    def test_homogenize_below_degree(self):
        with self.assertRaises(DegreeError):
            P("x1^3").homogenize(2)

    def test_substitute_variable(self):
        R2 = PolynomialRing(2, F)
        f = P("x1^2 + x2", R2)
        self.assertEqual(f.substitute_variable(0, P("x2 + 1", R2)), P("x2^2 + 3*x2 + 1", R2))

    def test_divide_exact(self):
        f = P("(x1 + x2)*(x1 - x3)")
        self.assertEqual(divide_exact(f, P("x1 + x2")), P("x1 - x3"))
        with self.assertRaises(PolynomialError):
            divide_exact(f + 1, P("x1 + x2"))


class TestAlgebraicProperties(unittest.TestCase):
    def random_monomial(self, rng, nvars=3, degree=6):
        return tuple(rng.randrange(degree + 1) for _ in range(nvars))

    def test_orderings_are_multiplicative(self):
        rng = random.Random(1338)
        unit = (0, 0, 0)
        for order in (LEX, GREVLEX, MonomialOrdering("lex", (2, 0, 1))):
            for _ in range(200):
                a, b, c = (self.random_monomial(rng) for _ in range(3))
                ac = tuple(x + y for x, y in zip(a, c))
                bc = tuple(x + y for x, y in zip(b, c))
                self.assertEqual(order.compare(a, b), order.compare(ac, bc), (order, a, b, c))
                self.assertLessEqual(order.compare(unit, a), 0)
                self.assertEqual(order.compare(a, a), 0)

    def test_euler_relation(self):
        rng = random.Random(7)
        for _ in range(20):
            f = random_poly(rng, R3, 4)
            d = f.total_degree() + rng.randrange(3)
            h = homogenize(f, d)
            x = h.ring.variables()
            euler = h.ring.zero()
            for j in range(h.ring.nvars):
                euler = euler + x[j] * h.partial_derivative(j)
            self.assertEqual(euler, h.scale(d))

    def test_derivative_commutes_with_homogenization(self):
        rng = random.Random(11)
        for _ in range(20):
            f = random_poly(rng, R3, 4)
            d = f.total_degree() + 1
            h = homogenize(f, d)
            for j in range(R3.nvars):
                self.assertEqual(
                    homogenize(f.partial_derivative(j), d - 1), h.partial_derivative(j + 1)
                )

    def test_dehomogenize_inverts_homogenize(self):
        rng = make_rng(1338)
        config = GenConfig(field=F)
        for i in range(100):
            n, d = 1 + i % 3, 1 + i % 4
            f = random_dense(n, d, config, rng)
            self.assertEqual(dehomogenize(homogenize(f, d)), f)
            self.assertEqual(dehomogenize(homogenize(f, d + 2)), f)

    def test_evaluation_is_a_ring_homomorphism(self):
        rng = random.Random(3)
        for _ in range(20):
            f, g = random_poly(rng, R3, 3), random_poly(rng, R3, 3)
            point = [rng.randrange(F.p) for _ in range(3)]
            self.assertEqual((f + g).evaluate(point), F.add(f.evaluate(point), g.evaluate(point)))
            self.assertEqual((f * g).evaluate(point), F.mul(f.evaluate(point), g.evaluate(point)))
            self.assertEqual(R3.constant(5).evaluate(point), 5)

    def test_degree_of_product(self):
        rng = random.Random(5)
        for _ in range(20):
            f, g = random_poly(rng, R3, 4), random_poly(rng, R3, 4)
            self.assertEqual((f * g).total_degree(), f.total_degree() + g.total_degree())


class TestSerialization(unittest.TestCase):
    def test_format(self):
        f = P("47 x1^5 + 5 x1 x2^4 - 92 x1 x3^2 + 7")
        self.assertEqual(format_polynomial(f), "47*x1^5 + 5*x1*x2^4 - 92*x1*x3^2 + 7")
        self.assertEqual(format_polynomial(R3.zero()), "0")
        self.assertEqual(format_polynomial(P("-x2 + x1")), "x1 - x2")

    def test_parse_format_agree(self):
        rng = random.Random(42)
        for _ in range(10):
            f = random_poly(rng, R3, 4)
            self.assertEqual(P(format_polynomial(f)), f)

    def test_python_power_syntax(self):
        self.assertEqual(P("x1**2 - -x2"), P("x1^2 + x2"))

    def test_syntax_error_column(self):
        with self.assertRaises(PolynomialSyntaxError) as ctx:
            P("x1 + $")
        self.assertEqual(ctx.exception.column, 6)
        with self.assertRaises(PolynomialSyntaxError):
            P("x1 +")
        with self.assertRaises(PolynomialSyntaxError):
            P("(x1 + x2")
        with self.assertRaises(PolynomialSyntaxError):
            P("")

    def test_unknown_variable(self):
        with self.assertRaises(UnknownVariableError) as ctx:
            P("x1 + x4")
        self.assertEqual(ctx.exception.column, 6)

    def test_custom_names(self):
        R2 = PolynomialRing(2, F)
        f = parse_polynomial("a*b + b", R2, ["a", "b"])
        self.assertEqual(f, P("x1*x2 + x2", R2))


if __name__ == "__main__":
    unittest.main()
