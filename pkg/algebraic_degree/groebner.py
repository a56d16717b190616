"""Zero-dimensional solving over GF(p).

Reduced Groebner bases come from Buchberger's algorithm with the coprime and
chain criteria and the normal pair-selection strategy. Solution counts are
quotient-ring dimensions; minimal polynomials of coordinates come from the
multiplication matrices, not from a lex basis.
"""
import heapq
import logging
import time
from dataclasses import dataclass

import numpy as np

from algebraic_degree.field_arith import field_inverse, matvec
from algebraic_degree.polyring import (
    GREVLEX,
    Polynomial,
    PolynomialRing,
    RingMismatchError,
    is_pure_power,
    monomial_divides,
    monomial_lcm,
    monomials_coprime,
)

logger = logging.getLogger(__name__)


class GroebnerError(Exception):
    pass


class DimensionError(GroebnerError):
    pass


class BudgetExceededError(GroebnerError):
    pass


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    ordering: object
    ring: PolynomialRing

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def leading_monomials(self):
        return [g.leading_monomial(self.ordering) for g in self.generators]

    def is_unit(self):
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def reduce(self, f):
        return normal_form(f, self.generators, self.ordering)


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials, ascending in the basis ordering."""

    monomials: tuple

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def index(self):
        return {m: i for i, m in enumerate(self.monomials)}


############################################################################
# reduction on raw term dictionaries
############################################################################
def _divisor(terms, order, p):
    """(leading monomial, inverse leading coefficient, term list) of a polynomial."""
    lm = max(terms, key=order.key)
    return lm, pow(terms[lm], p - 2, p), list(terms.items())


def _reduce_terms(terms, divisors, order, p):
    """Remainder of full multivariate division of `terms` by `divisors`."""
    rem = dict(terms)
    result = {}
    key = order.key
    while rem:
        lm = max(rem, key=key)
        c = rem[lm]
        for g_lm, g_inv, g_terms in divisors:
            if all(a <= b for a, b in zip(g_lm, lm)):
                factor = (c * g_inv) % p
                shift = tuple(b - a for a, b in zip(g_lm, lm))
                for m, gc in g_terms:
                    mm = tuple(x + y for x, y in zip(m, shift))
                    v = (rem.get(mm, 0) - factor * gc) % p
                    if v:
                        rem[mm] = v
                    else:
                        rem.pop(mm, None)
                break
        else:
            result[lm] = c
            del rem[lm]
    return result


def _monic_terms(terms, order, p):
    lm = max(terms, key=order.key)
    inv = pow(terms[lm], p - 2, p)
    return {m: (c * inv) % p for m, c in terms.items()}


def _spoly_terms(f, g, order, p):
    f_lm, f_inv, f_terms = f
    g_lm, g_inv, g_terms = g
    lcm = monomial_lcm(f_lm, g_lm)
    f_shift = tuple(a - b for a, b in zip(lcm, f_lm))
    g_shift = tuple(a - b for a, b in zip(lcm, g_lm))
    res = {}
    for m, c in f_terms:
        mm = tuple(x + y for x, y in zip(m, f_shift))
        res[mm] = (res.get(mm, 0) + c * f_inv) % p
    for m, c in g_terms:
        mm = tuple(x + y for x, y in zip(m, g_shift))
        res[mm] = (res.get(mm, 0) - c * g_inv) % p
    return {m: c for m, c in res.items() if c}


def _check_ring(polys):
    polys = list(polys)
    if not polys:
        raise GroebnerError("Need at least one polynomial to fix the ring")
    ring = polys[0].ring
    for f in polys:
        if f.ring != ring:
            raise RingMismatchError("Polynomials live in different rings")
    return ring


############################################################################
# public operations
############################################################################
def normal_form(f, G, order=GREVLEX):
    p = f.field.p
    divisors = [_divisor(g.terms, order, p) for g in G if not g.is_zero()]
    for g in G:
        if g.ring != f.ring:
            raise RingMismatchError("Divisor outside the ring of f")
    if not divisors or f.is_zero():
        return f
    return Polynomial(f.ring, _reduce_terms(f.terms, divisors, order, p), prune=False)


def s_polynomial(f, g, order=GREVLEX):
    if f.is_zero() or g.is_zero():
        raise GroebnerError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatchError("S-polynomial across rings")
    p = f.field.p
    terms = _spoly_terms(
        _divisor(f.terms, order, p), _divisor(g.terms, order, p), order, p
    )
    return Polynomial(f.ring, terms, prune=False)


def _minimal_reduced(items, order, p):
    """Minimalize and interreduce monic term dicts that generate via a Groebner basis."""
    key = order.key
    heads = sorted(
        ((max(t, key=key), t) for t in items), key=lambda pair: key(pair[0])
    )
    minimal = []
    for lm, terms in heads:
        if any(monomial_divides(other, lm) for other, _ in minimal):
            continue
        minimal.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(minimal):
        others = [
            (o_lm, 1, list(o_terms.items()))
            for j, (o_lm, o_terms) in enumerate(minimal)
            if j != idx
        ]
        tail = {m: c for m, c in terms.items() if m != lm}
        tail = _reduce_terms(tail, others, order, p) if others else tail
        tail[lm] = 1
        reduced.append(tail)
    return reduced


def reduce_basis(polys, order=GREVLEX):
    """Reduced form of a Groebner basis: monic, minimal, with reduced tails."""
    ring = _check_ring(polys)
    p = ring.field.p
    items = [_monic_terms(f.terms, order, p) for f in polys if not f.is_zero()]
    reduced = _minimal_reduced(items, order, p)
    return GroebnerBasis(
        tuple(Polynomial(ring, t, prune=False) for t in reduced), order, ring
    )


def buchberger(gens, order=GREVLEX, deadline=None):
    """Reduced Groebner basis of the ideal generated by `gens`.

    `deadline` is a time.monotonic() value; running past it raises
    BudgetExceededError.
    """
    ring = _check_ring(gens)
    p = ring.field.p
    key = order.key

    basis = []
    heap = []
    pending = set()

    def unit_basis():
        return GroebnerBasis((ring.one(),), order, ring)

    def add(terms):
        t = len(basis)
        basis.append(_divisor(terms, order, p))
        for i in range(t):
            lcm = monomial_lcm(basis[i][0], basis[t][0])
            heapq.heappush(heap, (key(lcm), i, t))
            pending.add((i, t))

    for f in gens:
        if f.is_zero():
            continue
        h = _reduce_terms(f.terms, basis, order, p) if basis else dict(f.terms)
        if not h:
            continue
        if all(not any(m) for m in h):
            return unit_basis()
        add(_monic_terms(h, order, p))

    if not basis:
        return GroebnerBasis((), order, ring)

    reductions = 0
    skipped = 0
    while heap:
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceededError(
                "Budget exhausted with {0} basis elements and {1} pairs left".format(
                    len(basis), len(heap)
                )
            )
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lm_i, lm_j = basis[i][0], basis[j][0]
        if monomials_coprime(lm_i, lm_j):
            skipped += 1
            continue
        lcm = monomial_lcm(lm_i, lm_j)
        if _chain_criterion(i, j, lcm, basis, pending):
            skipped += 1
            continue
        s = _spoly_terms(basis[i], basis[j], order, p)
        h = _reduce_terms(s, basis, order, p) if s else s
        reductions += 1
        if not h:
            continue
        if all(not any(m) for m in h):
            logger.debug("Unit ideal after %d reductions", reductions)
            return unit_basis()
        add(_monic_terms(h, order, p))
        if len(basis) % 50 == 0:
            logger.debug("Basis has %d elements, %d pairs queued", len(basis), len(heap))

    logger.debug(
        "Buchberger done: %d elements, %d reductions, %d pairs skipped",
        len(basis),
        reductions,
        skipped,
    )
    reduced = _minimal_reduced([dict(t) for _, _, t in basis], order, p)
    gens_out = tuple(Polynomial(ring, t, prune=False) for t in reduced)
    return GroebnerBasis(gens_out, order, ring)


def _chain_criterion(i, j, lcm, basis, pending):
    for k, (lm_k, _, _) in enumerate(basis):
        if k == i or k == j:
            continue
        if not monomial_divides(lm_k, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def is_reduced(gb):
    order = gb.ordering
    lms = gb.leading_monomials()
    for idx, g in enumerate(gb.generators):
        if g.leading_coefficient(order) != 1:
            return False
        for m in g.terms:
            for jdx, lm in enumerate(lms):
                if m == lms[idx] and jdx == idx:
                    continue
                if monomial_divides(lm, m):
                    return False
    return True


def is_zero_dimensional(gb, num_vars=None):
    if gb.is_unit():
        return True
    if num_vars is None:
        num_vars = gb.ring.nvars
    covered = set()
    for lm in gb.leading_monomials():
        v = is_pure_power(lm)
        if v is not None:
            covered.add(v)
    return all(v in covered for v in range(num_vars))


def quotient_basis(gb):
    if not is_zero_dimensional(gb):
        raise DimensionError("The ideal is not zero-dimensional")
    if gb.is_unit():
        return QuotientBasis(())
    nvars = gb.ring.nvars
    lms = gb.leading_monomials()
    unit = gb.ring.unit
    seen = {unit}
    queue = [unit]
    standard = []
    while queue:
        m = queue.pop()
        if any(monomial_divides(lm, m) for lm in lms):
            continue
        standard.append(m)
        for v in range(nvars):
            nxt = m[:v] + (m[v] + 1,) + m[v + 1:]
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return QuotientBasis(tuple(gb.ordering.sorted(standard)))


def quotient_dimension(gb):
    return len(quotient_basis(gb))


def _multiplication_matrix(gb, v, qb):
    p = gb.ring.field.p
    index = qb.index()
    divisors = [_divisor(g.terms, gb.ordering, p) for g in gb.generators]
    size = len(qb)
    matrix = np.zeros((size, size), dtype=np.int64)
    for col, b in enumerate(qb):
        shifted = b[:v] + (b[v] + 1,) + b[v + 1:]
        if shifted in index:
            matrix[index[shifted], col] = 1
            continue
        for m, c in _reduce_terms({shifted: 1}, divisors, gb.ordering, p).items():
            matrix[index[m], col] = c
    return matrix


def multiplication_matrix(gb, v):
    """Matrix of multiplication by x_v on the quotient, in standard-monomial coordinates."""
    if not 0 <= v < gb.ring.nvars:
        raise GroebnerError("No variable with index {0}".format(v))
    return _multiplication_matrix(gb, v, quotient_basis(gb))


def minimal_polynomial(gb, v):
    """Monic least-degree univariate q with q(x_v) = 0 in the quotient ring.

    Found as the first linear dependency among 1, x_v, x_v^2, ... written in
    standard-monomial coordinates. The result lives in a one-variable ring.
    """
    field = gb.ring.field
    p = field.p
    univariate = PolynomialRing(1, field)
    qb = quotient_basis(gb)
    size = len(qb)
    if size == 0:
        return univariate.one()
    matrix = _multiplication_matrix(gb, v, qb)
    power = np.zeros(size, dtype=np.int64)
    power[qb.index()[gb.ring.unit]] = 1

    rows = []
    for k in range(size + 1):
        vec = power.copy()
        combo = np.zeros(size + 1, dtype=np.int64)
        combo[k] = 1
        # each stored row is zero at the pivots of the rows before it
        for pivot, row_vec, row_combo in rows:
            f = int(vec[pivot])
            if f:
                vec = (vec - f * row_vec) % p
                combo = (combo - f * row_combo) % p
        nonzero = np.nonzero(vec)[0]
        if nonzero.size == 0:
            terms = {(j,): int(combo[j]) for j in range(k + 1)}
            return Polynomial(univariate, terms)
        pivot = int(nonzero[0])
        inv = field_inverse(int(vec[pivot]), field)
        rows.append((pivot, (vec * inv) % p, (combo * inv) % p))
        power = matvec(matrix, power, field)
    raise GroebnerError("No dependency found among {0} powers".format(size + 1))
