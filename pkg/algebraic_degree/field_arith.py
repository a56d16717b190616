import logging
import math
from dataclasses import dataclass

import numpy as np
from sympy import isprime

logger = logging.getLogger(__name__)

# Largest modulus whose products still fit a signed 64-bit word.
MAX_PRIME = 2**31
DEFAULT_PRIME = 2147483647


class FieldArithmeticError(Exception):
    pass


class FieldDivisionError(FieldArithmeticError, ZeroDivisionError):
    pass


@dataclass(frozen=True)
class PrimeField:
    """GF(p) with elements stored as plain ints in [0, p)."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or self.p >= MAX_PRIME:
            raise FieldArithmeticError(
                "Modulus {0} is outside [2, 2^31)".format(self.p)
            )
        if not isprime(self.p):
            raise FieldArithmeticError("Modulus {0} is not prime".format(self.p))

    def element(self, value):
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return field_inverse(a, self)

    def div(self, a, b):
        return (a * field_inverse(b, self)) % self.p

    def pow(self, a, e):
        if e < 0:
            return pow(field_inverse(a, self), -e, self.p)
        return pow(a, e, self.p)

    def signed(self, a):
        """Representative of `a` in (-p/2, p/2], used for printing."""
        a %= self.p
        return a - self.p if a > self.p // 2 else a


def field_inverse(a, field):
    a %= field.p
    if a == 0:
        raise FieldDivisionError("0 has no inverse in GF({0})".format(field.p))
    return pow(a, field.p - 2, field.p)


def binomial(n, k):
    if n < 0:
        raise FieldArithmeticError("binomial: n = {0} is negative".format(n))
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def row_reduce(matrix, field):
    """Reduced row echelon form over GF(p); returns (matrix, pivot columns)."""
    a = np.array(matrix, dtype=np.int64) % field.p
    if a.ndim != 2:
        raise FieldArithmeticError("row_reduce expects a 2-d matrix")
    n_rows, n_cols = a.shape
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        a[r] = (a[r] * field_inverse(int(a[r, c]), field)) % field.p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            # entries < 2^31, so each product stays below 2^62
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % field.p
        pivots.append(c)
        r += 1
    return a, pivots


def matrix_rank(matrix, field):
    if len(matrix) == 0:
        return 0
    _, pivots = row_reduce(matrix, field)
    return len(pivots)


def matvec(matrix, vector, field):
    """Matrix-vector product mod p without int64 overflow.

    The vector is split into 16-bit halves so every partial dot product stays
    below 2^63 for dimensions up to 2^15.
    """
    a = np.asarray(matrix, dtype=np.int64) % field.p
    v = np.asarray(vector, dtype=np.int64) % field.p
    low = v & 0xFFFF
    high = v >> 16
    lo_part = (a @ low) % field.p
    hi_part = (a @ high) % field.p
    return (lo_part + (hi_part << 16)) % field.p
