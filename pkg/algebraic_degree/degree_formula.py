"""Closed-form algebraic degrees of polynomial optimization problems.

All values are exact Python integers. The general bound for n variables,
objective degree d0 and m equality (or active) constraints of degrees
d1..dm is

    d1 * ... * dm * D_{n-m}(d0 - 1, d1 - 1, ..., dm - 1)

where D_r is the complete homogeneous symmetric sum of degree r.
"""
import logging
from dataclasses import dataclass

from algebraic_degree.field_arith import binomial

logger = logging.getLogger(__name__)


class ShapeError(Exception):
    pass


class InfeasibleShapeError(ShapeError):
    pass


@dataclass(frozen=True)
class DegreeShape:
    n: int
    m: int
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 1:
            raise ShapeError("Need at least one variable, got n = {0}".format(self.n))
        if self.m < 0:
            raise ShapeError("Negative constraint count m = {0}".format(self.m))
        if len(self.degrees) != self.m + 1:
            raise ShapeError(
                "Expected {0} degrees (d0..dm), got {1}".format(
                    self.m + 1, len(self.degrees)
                )
            )
        if any(d < 1 for d in self.degrees):
            raise ShapeError("Degrees must be >= 1, got {0}".format(self.degrees))
        if self.m > self.n:
            raise InfeasibleShapeError(
                "m = {0} constraints exceed n = {1} variables".format(self.m, self.n)
            )

    @property
    def objective_degree(self):
        return self.degrees[0]

    @property
    def constraint_degrees(self):
        return self.degrees[1:]


@dataclass(frozen=True)
class ConeShape:
    """Active-set shape of a second- or p-th order cone program.

    `k` constraints have single-row cone blocks and reduce to linear
    constraints; `rows` holds the row counts of the other m - k blocks.
    """

    n: int
    k: int
    m: int
    rows: tuple = ()
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if not 0 <= self.k <= self.m:
            raise ShapeError("Need 0 <= k <= m, got k={0}, m={1}".format(self.k, self.m))
        if self.m > self.n:
            raise InfeasibleShapeError(
                "m = {0} constraints exceed n = {1} variables".format(self.m, self.n)
            )
        if self.p < 2:
            raise ShapeError("Cone order p must be >= 2, got {0}".format(self.p))
        if self.rows and len(self.rows) != self.m - self.k:
            raise ShapeError(
                "Expected {0} row counts, got {1}".format(self.m - self.k, len(self.rows))
            )
        if any(r < 2 for r in self.rows):
            raise ShapeError("Row counts must be >= 2, got {0}".format(self.rows))

    def degree_shape(self):
        degrees = (1,) + (1,) * self.k + (self.p,) * (self.m - self.k)
        return DegreeShape(self.n, self.m, degrees)


def symmetric_sum(r, args):
    """D_r(a1, ..., ak): sum over i1+...+ik = r of a1^i1 * ... * ak^ik.

    Built one argument at a time from h_j(a1..ai) = h_j(a1..ai-1) + ai * h_{j-1}(a1..ai).
    """
    if r < 0:
        raise ShapeError("symmetric_sum: negative degree r = {0}".format(r))
    args = list(args)
    if not args:
        raise ShapeError("symmetric_sum needs at least one argument")
    if any(a < 0 for a in args):
        raise ShapeError("symmetric_sum arguments must be >= 0, got {0}".format(args))
    h = [1] + [0] * r
    for a in args:
        for j in range(1, r + 1):
            h[j] += a * h[j - 1]
    return h[r]


def general_degree(shape):
    n, m = shape.n, shape.m
    if m > n:
        raise InfeasibleShapeError("m = {0} exceeds n = {1}".format(m, n))
    product = 1
    for d in shape.constraint_degrees:
        product *= d
    return product * symmetric_sum(n - m, [d - 1 for d in shape.degrees])


def active_set_degree(n, d0, equality_degrees=(), active_degrees=()):
    """Degree when the active inequalities are known: merge them with the equalities."""
    merged = tuple(equality_degrees) + tuple(active_degrees)
    if len(merged) > n:
        raise InfeasibleShapeError(
            "{0} equality and {1} active constraints exceed n = {2}".format(
                len(equality_degrees), len(active_degrees), n
            )
        )
    return general_degree(DegreeShape(n, len(merged), (d0,) + merged))


def unconstrained_degree(n, d0):
    return general_degree(DegreeShape(n, 0, (d0,)))


def lp_degree(n):
    # generic LP: n linear constraints active at a vertex
    return general_degree(DegreeShape(n, n, (1,) * (n + 1)))


def _check_counts(n, k, m):
    if not 0 <= k <= m:
        raise ShapeError("Need 0 <= k <= m, got k={0}, m={1}".format(k, m))
    if m > n:
        raise InfeasibleShapeError("m = {0} exceeds n = {1}".format(m, n))


def qcqp_degree(n, m):
    _check_counts(n, 0, m)
    return 2**m * binomial(n, m)


def socp_degree(n, k, m):
    return pocp_degree(n, k, m, 2)


def pocp_degree(n, k, m, p):
    _check_counts(n, k, m)
    if p < 2:
        raise ShapeError("Cone order p must be >= 2, got {0}".format(p))
    if k == m:
        # all cones are single rows: the problem is an LP
        return 1
    return p ** (m - k) * (p - 1) ** (n - m) * binomial(n - k - 1, m - k - 1)


def degree_sweep(problem_class, n_values, m_values, k=0, p=2, d0=None, degree=None):
    """Rows (n, m, degree) over a grid; infeasible cells are skipped."""
    from algebraic_degree.problems.all_problems import predicted_degree_from_name

    formula = predicted_degree_from_name[problem_class]
    for n in n_values:
        for m in m_values:
            try:
                value = formula(n=n, m=m, k=k, p=p, d0=d0, degree=degree)
            except ShapeError:
                continue
            yield n, m, value
