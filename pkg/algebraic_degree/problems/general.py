from algebraic_degree.degree_formula import DegreeShape

from .problem_utils import get_problem_instance, make_rng, random_dense


def gen_general(n, degrees, config, problem_class="general"):
    """Dense random objective of degree d0 and constraints of degrees d1..dm."""
    degrees = tuple(degrees)
    shape = DegreeShape(n, len(degrees) - 1, degrees)
    rng = make_rng(config.seed)
    objective = random_dense(n, degrees[0], config, rng)
    constraints = [random_dense(n, d, config, rng) for d in degrees[1:]]
    return get_problem_instance(
        objective, constraints, problem_class, config, degree_shape=shape
    )


def gen_unconstrained(n, d0, config):
    return gen_general(n, (d0,), config, problem_class="unconstrained")
