from algebraic_degree.census import CensusOptions, emit_report, run_census
from algebraic_degree.degree_formula import (
    ConeShape,
    DegreeShape,
    active_set_degree,
    general_degree,
    pocp_degree,
    qcqp_degree,
    socp_degree,
    unconstrained_degree,
)
from algebraic_degree.field_arith import PrimeField
from algebraic_degree.polyring import PolynomialRing, format_polynomial, parse_polynomial
from algebraic_degree.problems import GenConfig

# closed-form degrees
print(general_degree(DegreeShape(3, 2, (5, 4, 3))))  # 108
print(unconstrained_degree(4, 4))  # 81
print(qcqp_degree(5, 3), active_set_degree(5, 2, active_degrees=(2, 2, 2)))  # 80 80
print(socp_degree(5, 0, 3))  # 48
print(pocp_degree(4, 0, 1, 4))  # 108

# polynomials print and parse in the same notation
field = PrimeField(2147483647)
ring = PolynomialRing(3, field)
f0 = parse_polynomial("47 x1^5 + 5 x1 x2^4 - 92 x1 x3^2 + 7", ring)
print(format_polynomial(f0))

# small census runs: generated instance, exact count, comparison with the formula
options = CensusOptions(budget=60, minpoly=True)
for config in [
    GenConfig(seed=1338, field=field, problem_class="general", shape=DegreeShape(2, 1, (2, 2))),
    GenConfig(seed=1338, field=field, problem_class="socp", shape=ConeShape(4, 1, 2, (3,))),
    GenConfig(seed=1338, field=field, problem_class="pocp", shape=ConeShape(3, 0, 1, (3,), 3)),
]:
    report = run_census(config, options)
    print(emit_report(report, "text").decode("utf-8"))
