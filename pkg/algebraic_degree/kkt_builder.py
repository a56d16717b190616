"""Critical-point systems of equality-constrained polynomial problems.

Two formulations are built: the Lagrange system in (x, lambda) and the
determinantal system in x alone, where all maximal minors of the gradient
matrix [grad f0 | grad f1 | ... | grad fm] vanish on the constraint set.
"""
import itertools
import logging
from dataclasses import dataclass, field

from algebraic_degree.degree_formula import DegreeShape, InfeasibleShapeError, ShapeError
from algebraic_degree.polyring import (
    PolynomialRing,
    RingMismatchError,
    default_variable_names,
    divide_exact,
)

logger = logging.getLogger(__name__)

# cofactor expansion up to this size, fraction-free elimination above it
COFACTOR_LIMIT = 4


@dataclass(frozen=True)
class ProblemSpec:
    """min f0(x) subject to f_i(x) = 0 for every listed constraint."""

    n: int
    objective: object
    constraints: tuple = ()
    problem_class: str = "general"
    cone: object = None
    seed: int = None
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        ring = self.objective.ring
        if ring.nvars != self.n:
            raise RingMismatchError(
                "Objective lives in {0} variables, expected {1}".format(
                    ring.nvars, self.n
                )
            )
        for i, f in enumerate(self.constraints):
            if f.ring != ring:
                raise RingMismatchError(
                    "Constraint {0} is not in the objective's ring".format(i + 1)
                )
        if self.m > self.n:
            raise InfeasibleShapeError(
                "{0} constraints exceed n = {1} variables".format(self.m, self.n)
            )

    @property
    def m(self):
        return len(self.constraints)

    @property
    def ring(self):
        return self.objective.ring

    @property
    def field(self):
        return self.ring.field

    @property
    def polynomials(self):
        return (self.objective,) + self.constraints

    @property
    def degrees(self):
        return tuple(f.total_degree() for f in self.polynomials)

    def degree_shape(self):
        return DegreeShape(self.n, self.m, self.degrees)


@dataclass(frozen=True)
class PolySystem:
    ring: PolynomialRing
    equations: tuple
    n_original: int
    n_multipliers: int = 0

    @property
    def nvars(self):
        return self.ring.nvars

    @property
    def original_variables(self):
        return tuple(range(self.n_original))

    @property
    def multiplier_variables(self):
        return tuple(range(self.n_original, self.n_original + self.n_multipliers))

    def variable_names(self):
        return default_variable_names(self.n_original, self.n_multipliers)


def build_lagrange_system(spec):
    """grad f0 + sum_i l_i grad f_i = 0 together with f_1 = ... = f_m = 0."""
    n, m = spec.n, spec.m
    if m == 0:
        raise ShapeError("No constraints: use gradient_system instead")
    if m > n:
        raise InfeasibleShapeError("m = {0} exceeds n = {1}".format(m, n))
    ring = spec.ring.extend(m)
    f0 = ring.embed(spec.objective)
    fs = [ring.embed(f) for f in spec.constraints]
    multipliers = [ring.variable(n + i) for i in range(m)]

    equations = []
    for j in range(n):
        eq = f0.partial_derivative(j)
        for lam, f in zip(multipliers, fs):
            eq = eq + lam * f.partial_derivative(j)
        equations.append(eq)
    equations.extend(fs)
    logger.debug("Lagrange system: %d equations in %d variables", len(equations), ring.nvars)
    return PolySystem(ring, tuple(equations), n_original=n, n_multipliers=m)


def gradient_system(spec):
    if spec.m != 0:
        raise ShapeError("gradient_system expects an unconstrained problem")
    f0 = spec.objective
    equations = tuple(f0.partial_derivative(j) for j in range(spec.n))
    return PolySystem(spec.ring, equations, n_original=spec.n)


def critical_system(spec):
    if spec.m == 0:
        return gradient_system(spec)
    return build_lagrange_system(spec)


def jacobian_like_matrix(spec):
    """n x (m+1) matrix with entry (j, i) = d f_i / d x_j."""
    return [
        [f.partial_derivative(j) for f in spec.polynomials] for j in range(spec.n)
    ]


def homogenized_jacobian_matrix(spec):
    """Matrix M of partials d~f_i/dx_j, ~f_i = x0^{d_i} f_i(x/x0), x0 at index 0."""
    hom = [f.homogenize(f.total_degree()) for f in spec.polynomials]
    return [[h.partial_derivative(j + 1) for h in hom] for j in range(spec.n)]


def minor_expansion(matrix, rows, cols):
    rows, cols = list(rows), list(cols)
    if len(rows) != len(cols):
        raise ShapeError("Minor needs equal row and column counts")
    if not rows:
        raise ShapeError("Empty minor")
    sub = [[matrix[r][c] for c in cols] for r in rows]
    if len(sub) <= COFACTOR_LIMIT:
        return _cofactor_determinant(sub)
    return _bareiss_determinant(sub)


def _cofactor_determinant(sub):
    size = len(sub)
    if size == 1:
        return sub[0][0]
    if size == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    det = sub[0][0].ring.zero()
    for c in range(size):
        entry = sub[0][c]
        if entry.is_zero():
            continue
        minor = [row[:c] + row[c + 1:] for row in sub[1:]]
        term = entry * _cofactor_determinant(minor)
        det = det + term if c % 2 == 0 else det - term
    return det


def _bareiss_determinant(sub):
    a = [list(row) for row in sub]
    size = len(a)
    ring = a[0][0].ring
    sign = 1
    previous = ring.one()
    for k in range(size - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, size) if not a[i][k].is_zero()), None)
            if swap is None:
                return ring.zero()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                numerator = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(numerator, previous)
        previous = a[k][k]
    det = a[size - 1][size - 1]
    return det if sign > 0 else -det


def build_minor_system(spec):
    """f_1..f_m plus every (m+1)x(m+1) minor of the gradient matrix, in x only."""
    n, m = spec.n, spec.m
    if m + 1 > n:
        raise ShapeError(
            "Minor system needs m + 1 <= n, got m = {0}, n = {1}".format(m, n)
        )
    matrix = jacobian_like_matrix(spec)
    cols = list(range(m + 1))
    minors = [
        minor_expansion(matrix, rows, cols)
        for rows in itertools.combinations(range(n), m + 1)
    ]
    equations = spec.constraints + tuple(minors)
    logger.debug("Minor system: %d constraints, %d minors", m, len(minors))
    return PolySystem(spec.ring, equations, n_original=n)
