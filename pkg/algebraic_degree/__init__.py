from algebraic_degree.census import CensusOptions, CensusReport, compare_formulations, run_census
from algebraic_degree.degree_formula import (
    ConeShape,
    DegreeShape,
    active_set_degree,
    general_degree,
    pocp_degree,
    qcqp_degree,
    socp_degree,
    symmetric_sum,
)
from algebraic_degree.field_arith import PrimeField
from algebraic_degree.kkt_builder import ProblemSpec, build_lagrange_system, build_minor_system
from algebraic_degree.polyring import GREVLEX, LEX, PolynomialRing, parse_polynomial
