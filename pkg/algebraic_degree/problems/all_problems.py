from algebraic_degree.degree_formula import (
    ConeShape,
    DegreeShape,
    ShapeError,
    general_degree,
    lp_degree,
    pocp_degree,
    qcqp_degree,
    socp_degree,
    unconstrained_degree,
)

from . import cones, general, qcqp


def _degree_shape(config):
    if not isinstance(config.shape, DegreeShape):
        raise ShapeError("{0} instances need a DegreeShape".format(config.problem_class))
    return config.shape


def _cone_shape(config):
    if not isinstance(config.shape, ConeShape):
        raise ShapeError("{0} instances need a ConeShape".format(config.problem_class))
    return config.shape


def _gen_general(config):
    shape = _degree_shape(config)
    return general.gen_general(shape.n, shape.degrees, config)


def _gen_unconstrained(config):
    shape = _degree_shape(config)
    if shape.m != 0:
        raise ShapeError("Unconstrained instances take no constraints")
    return general.gen_unconstrained(shape.n, shape.objective_degree, config)


def _gen_qcqp(config):
    shape = _degree_shape(config)
    return qcqp.gen_qcqp(shape.n, shape.m, config)


problem_from_name = {
    "general": _gen_general,
    "unconstrained": _gen_unconstrained,
    "qcqp": _gen_qcqp,
    "socp": lambda config: cones.gen_socp(_cone_shape(config), config),
    "pocp": lambda config: cones.gen_pocp(_cone_shape(config), config),
}


def _general_formula(n, m, d0=None, degree=None, **_):
    if d0 is None or degree is None:
        raise ShapeError("The general class needs d0 and a constraint degree")
    return general_degree(DegreeShape(n, m, (d0,) + (degree,) * m))


def _unconstrained_formula(n, m=0, d0=None, **_):
    if m != 0:
        raise ShapeError("Unconstrained problems have m = 0")
    if d0 is None:
        raise ShapeError("The unconstrained class needs d0")
    return unconstrained_degree(n, d0)


def _lp_formula(n, m=None, **_):
    if m is not None and m != n:
        raise ShapeError("A generic LP has exactly n active constraints")
    return lp_degree(n)


predicted_degree_from_name = {
    "general": _general_formula,
    "unconstrained": _unconstrained_formula,
    "lp": _lp_formula,
    "qcqp": lambda n, m, **_: qcqp_degree(n, m),
    "socp": lambda n, m, k=0, **_: socp_degree(n, k, m),
    "pocp": lambda n, m, k=0, p=2, **_: pocp_degree(n, k, m, p),
}


def generate_instance(config):
    try:
        generator = problem_from_name[config.problem_class]
    except KeyError:
        raise ShapeError("Unknown problem class {0!r}".format(config.problem_class)) from None
    return generator(config)
