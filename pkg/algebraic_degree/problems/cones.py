"""Second- and p-th order cone programs at a fixed active set.

An active cone constraint with r rows reads

    (a^T x + b)^p - sum_{j=1..r} (C_j x + d_j)^p = 0

and single-row cones are replaced by random linear constraints, which is
what the sign choice a^T x + b + s (C x + d) reduces them to.
"""
import logging

from algebraic_degree.degree_formula import ConeShape, ShapeError
from algebraic_degree.polyring import PolynomialRing

from .problem_utils import (
    get_problem_instance,
    make_rng,
    quadratic_form_rank,
    random_linear_form,
)

logger = logging.getLogger(__name__)


def default_rows(n, m):
    # smallest uniform row count with r_{k+1} + ... + r_m + m > n
    return max(2, n - m + 1)


def normalize_cone_shape(shape):
    """Sort the row counts ascending; returns (shape, permutation applied)."""
    rows = shape.rows or (default_rows(shape.n, shape.m),) * (shape.m - shape.k)
    permutation = tuple(sorted(range(len(rows)), key=lambda i: rows[i]))
    ordered = tuple(rows[i] for i in permutation)
    if permutation != tuple(range(len(rows))):
        logger.info("Row counts %s reordered to %s", rows, ordered)
    return ConeShape(shape.n, shape.k, shape.m, ordered, shape.p), permutation


def cone_constraint(ring, rng, rows, p):
    head = random_linear_form(ring, rng)
    poly = head**p
    for _ in range(rows):
        poly = poly - random_linear_form(ring, rng) ** p
    return poly


def is_sharp_shape(shape):
    """Whether the cone rows are numerous enough for the degree bound to be attained."""
    return shape.k == shape.m or sum(shape.rows) + shape.m > shape.n


def _gen_cone(shape, config, problem_class):
    shape, permutation = normalize_cone_shape(shape)
    rng = make_rng(config.seed)
    ring = PolynomialRing(shape.n, config.field)
    objective = random_linear_form(ring, rng, constant=False)

    if shape.k == shape.m:
        # every cone is a single row: an LP with n active linear constraints
        constraints = [random_linear_form(ring, rng) for _ in range(shape.n)]
        return get_problem_instance(
            objective,
            constraints,
            problem_class,
            config,
            cone=shape,
            lp_reduction=True,
            row_permutation=permutation,
            sharp=True,
        )

    constraints = [random_linear_form(ring, rng) for _ in range(shape.k)]
    constraints += [cone_constraint(ring, rng, r, shape.p) for r in shape.rows]

    degenerate = []
    if shape.p == 2 and config.field.p != 2:
        for i, (f, r) in enumerate(zip(constraints[shape.k:], shape.rows)):
            expected = min(r + 1, shape.n + 1)
            rank = quadratic_form_rank(f)
            if rank != expected:
                logger.warning(
                    "Cone constraint %d has rank %d, expected %d", shape.k + i + 1, rank, expected
                )
                degenerate.append(shape.k + i + 1)

    return get_problem_instance(
        objective,
        constraints,
        problem_class,
        config,
        cone=shape,
        lp_reduction=False,
        row_permutation=permutation,
        degenerate_constraints=tuple(degenerate),
        sharp=is_sharp_shape(shape),
    )


def gen_socp(shape, config):
    if shape.p != 2:
        raise ShapeError("SOCP needs cone order 2, got {0}".format(shape.p))
    return _gen_cone(shape, config, "socp")


def gen_pocp(shape, config):
    return _gen_cone(shape, config, "pocp")
