from algebraic_degree.degree_formula import DegreeShape
from algebraic_degree.polyring import PolynomialRing

from .problem_utils import (
    get_problem_instance,
    make_rng,
    quadratic_from_matrices,
    random_elements,
    random_symmetric_matrix,
)


def random_quadratic(ring, rng):
    a = random_symmetric_matrix(ring.nvars, rng, ring.field)
    b = random_elements(rng, ring.field, ring.nvars)
    (c,) = random_elements(rng, ring.field, 1)
    return quadratic_from_matrices(ring, a, b, c)


def gen_qcqp(n, m, config):
    """x^T A0 x + b0^T x + c0 with m active constraints x^T Ai x + bi^T x + ci = 0."""
    shape = DegreeShape(n, m, (2,) * (m + 1))
    rng = make_rng(config.seed)
    ring = PolynomialRing(n, config.field)
    objective = random_quadratic(ring, rng)
    constraints = [random_quadratic(ring, rng) for _ in range(m)]
    return get_problem_instance(
        objective, constraints, "qcqp", config, degree_shape=shape
    )
