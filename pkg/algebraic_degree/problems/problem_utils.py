import itertools
import logging
from dataclasses import dataclass

import numpy as np

from algebraic_degree.field_arith import DEFAULT_PRIME, PrimeField, field_inverse, matrix_rank
from algebraic_degree.kkt_builder import ProblemSpec
from algebraic_degree.polyring import GREVLEX, Polynomial, PolynomialRing, PolynomialError

logger = logging.getLogger(__name__)

SEED_LIMIT = 2**64


class InstanceError(Exception):
    pass


@dataclass(frozen=True)
class GenConfig:
    """Everything that determines a generated instance.

    Instances are drawn from numpy's PCG64 generator seeded with `seed`, so
    the same seed, shape and prime reproduce the same instance anywhere.
    """

    seed: int = 1338
    field: PrimeField = PrimeField(DEFAULT_PRIME)
    problem_class: str = "general"
    shape: object = None

    def __post_init__(self):
        if not 0 <= self.seed < SEED_LIMIT:
            raise InstanceError("Seed {0} is not a 64-bit unsigned integer".format(self.seed))

    def with_seed(self, seed):
        return GenConfig(seed, self.field, self.problem_class, self.shape)


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(seed, attempt):
    """Seed for retry `attempt`; attempt 0 is the seed itself."""
    if attempt == 0:
        return seed
    sequence = np.random.SeedSequence(seed, spawn_key=(attempt,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def random_elements(rng, field, count):
    return [int(c) for c in rng.integers(0, field.p, size=count, dtype=np.int64)]


def dense_monomials(n, d):
    """All exponent tuples in n variables of total degree <= d, grevlex ascending."""
    monomials = []
    for total in range(d + 1):
        for combo in itertools.combinations_with_replacement(range(n), total):
            exps = [0] * n
            for v in combo:
                exps[v] += 1
            monomials.append(tuple(exps))
    return GREVLEX.sorted(monomials)


def random_dense(n, d, config, rng=None):
    """Every monomial of degree <= d gets an independent uniform coefficient."""
    if d < 1:
        raise InstanceError("Degree must be >= 1, got {0}".format(d))
    if rng is None:
        rng = make_rng(config.seed)
    ring = PolynomialRing(n, config.field)
    monomials = dense_monomials(n, d)
    coefficients = random_elements(rng, config.field, len(monomials))
    poly = Polynomial(ring, dict(zip(monomials, coefficients)))
    top = [m for m in monomials if sum(m) == d]
    while poly.is_zero() or poly.total_degree() < d:
        # leading form vanished: redraw it
        redrawn = dict(poly.terms)
        redrawn.update(zip(top, random_elements(rng, config.field, len(top))))
        poly = Polynomial(ring, redrawn)
    return poly


def random_linear_form(ring, rng, constant=True):
    while True:
        coefficients = random_elements(rng, ring.field, ring.nvars + (1 if constant else 0))
        terms = {}
        for i in range(ring.nvars):
            terms[tuple(1 if j == i else 0 for j in range(ring.nvars))] = coefficients[i]
        if constant:
            terms[ring.unit] = coefficients[-1]
        poly = Polynomial(ring, terms)
        if not poly.is_constant():
            return poly


def random_symmetric_matrix(n, rng, field):
    upper = random_elements(rng, field, n * (n + 1) // 2)
    a = [[0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i, n):
            a[i][j] = a[j][i] = next(it)
    return a


def quadratic_from_matrices(ring, a, b, c):
    """x^T A x + b^T x + c."""
    x = ring.variables()
    poly = ring.constant(c)
    for i in range(ring.nvars):
        poly = poly + x[i].scale(b[i])
        for j in range(ring.nvars):
            if a[i][j]:
                poly = poly + (x[i] * x[j]).scale(a[i][j])
    return poly


def quadratic_form_rank(f):
    """Rank of the symmetric matrix of f homogenized to degree 2 (odd p only)."""
    field = f.field
    if field.p == 2:
        raise InstanceError("Quadratic form rank needs odd characteristic")
    if f.total_degree() > 2:
        raise PolynomialError("Not a quadratic: degree {0}".format(f.total_degree()))
    h = f.homogenize(2)
    size = h.ring.nvars
    half = field_inverse(2, field)
    matrix = [[0] * size for _ in range(size)]
    for m, c in h.terms.items():
        support = [i for i, e in enumerate(m) for _ in range(e)]
        i, j = support
        if i == j:
            matrix[i][i] = c
        else:
            matrix[i][j] = matrix[j][i] = (c * half) % field.p
    return matrix_rank(matrix, field)


def get_problem_instance(objective, constraints, problem_class, config, cone=None, **metadata):
    spec = ProblemSpec(
        n=objective.ring.nvars,
        objective=objective,
        constraints=tuple(constraints),
        problem_class=problem_class,
        cone=cone,
        seed=config.seed,
        metadata=metadata,
    )
    logger.debug(
        "Generated %s instance n=%d m=%d degrees=%s seed=%d",
        problem_class,
        spec.n,
        spec.m,
        spec.degrees,
        config.seed,
    )
    return spec
