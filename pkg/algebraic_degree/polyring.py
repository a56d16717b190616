"""Multivariate polynomials over GF(p).

Monomials are plain exponent tuples, one entry per ring variable. Variables
are anonymous indices; names only appear when a polynomial is printed or
parsed.
"""
import logging
import re
from dataclasses import dataclass
from functools import lru_cache

from algebraic_degree.field_arith import PrimeField, field_inverse

logger = logging.getLogger(__name__)

MAX_EXPONENT = 2**15 - 1


class PolynomialError(Exception):
    pass


class RingMismatchError(PolynomialError):
    pass


class DegreeError(PolynomialError):
    pass


class PolynomialSyntaxError(PolynomialError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self._describe())

    def _describe(self):
        where = []
        if self.line is not None:
            where.append("line {0}".format(self.line))
        if self.column is not None:
            where.append("column {0}".format(self.column))
        if where:
            return "{0} ({1})".format(self.message, ", ".join(where))
        return self.message

    def at_line(self, line):
        return type(self)(self.message, line=line, column=self.column)


class UnknownVariableError(PolynomialSyntaxError):
    pass


############################################################################
# monomials
############################################################################
def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_quotient(b, a):
    """b / a, assuming a divides b."""
    return tuple(y - x for x, y in zip(a, b))


def monomial_lcm(a, b):
    lcm = tuple(x if x > y else y for x, y in zip(a, b))
    if lcm and max(lcm) > MAX_EXPONENT:
        raise DegreeError("Exponent overflow in lcm {0}".format(lcm))
    return lcm


def monomials_coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _exponent_bounds(monomials):
    """Largest exponent of each variable over the monomials."""
    return tuple(max(column) for column in zip(*monomials))


def _check_product_exponents(a, b):
    if any(x + y > MAX_EXPONENT for x, y in zip(a, b)):
        raise DegreeError("Exponent overflow in product, bounds {0} and {1}".format(a, b))



def is_pure_power(m):
    """Index of the only variable in m, or None."""
    support = [i for i, e in enumerate(m) if e]
    return support[0] if len(support) == 1 else None


@lru_cache(maxsize=1 << 18)
def _lex_key(m, perm):
    if perm is None:
        return m
    return tuple(m[i] for i in perm)


@lru_cache(maxsize=1 << 18)
def _grevlex_key(m, perm):
    if perm is not None:
        m = tuple(m[i] for i in perm)
    return (sum(m), tuple(-e for e in reversed(m)))


_KEYS = {"lex": _lex_key, "grevlex": _grevlex_key}


@dataclass(frozen=True)
class MonomialOrdering:
    """A multiplicative well-ordering; larger keys mean larger monomials.

    `permutation` lists variable indices from most to least significant.
    """

    kind: str = "grevlex"
    permutation: tuple = None

    def __post_init__(self):
        if self.kind not in _KEYS:
            raise PolynomialError("Unknown monomial ordering {0}".format(self.kind))
        if self.permutation is not None:
            perm = tuple(self.permutation)
            if sorted(perm) != list(range(len(perm))):
                raise PolynomialError("{0} is not a permutation".format(perm))
            object.__setattr__(self, "permutation", perm)

    def key(self, m):
        return _KEYS[self.kind](m, self.permutation)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def max(self, monomials):
        return max(monomials, key=self.key)

    def sorted(self, monomials, reverse=False):
        return sorted(monomials, key=self.key, reverse=reverse)


LEX = MonomialOrdering("lex")
GREVLEX = MonomialOrdering("grevlex")

ordering_from_name = {"lex": LEX, "grevlex": GREVLEX}


############################################################################
# rings and polynomials
############################################################################
@dataclass(frozen=True)
class PolynomialRing:
    nvars: int
    field: PrimeField

    def __post_init__(self):
        if self.nvars < 0:
            raise PolynomialError("Negative variable count {0}".format(self.nvars))

    @property
    def unit(self):
        return (0,) * self.nvars

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.constant(1)

    def constant(self, c):
        return Polynomial(self, {self.unit: c})

    def variable(self, i):
        if not 0 <= i < self.nvars:
            raise PolynomialError(
                "Variable index {0} outside ring with {1} variables".format(
                    i, self.nvars
                )
            )
        mono = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {mono: 1})

    def variables(self):
        return [self.variable(i) for i in range(self.nvars)]

    def from_terms(self, terms):
        return Polynomial(self, dict(terms))

    def extend(self, k):
        return PolynomialRing(self.nvars + k, self.field)

    def embed(self, f, offset=0):
        """Copy f from a smaller ring, its variables landing at offset..."""
        if f.ring.field != self.field:
            raise RingMismatchError("Cannot embed across different fields")
        if offset + f.ring.nvars > self.nvars:
            raise RingMismatchError(
                "{0} variables do not fit at offset {1} of a {2}-variable ring".format(
                    f.ring.nvars, offset, self.nvars
                )
            )
        tail = self.nvars - offset - f.ring.nvars
        head = (0,) * offset
        pad = (0,) * tail
        return Polynomial(
            self, {head + m + pad: c for m, c in f.terms.items()}, prune=False
        )


class Polynomial:
    __slots__ = ("ring", "terms", "_sorted")

    def __init__(self, ring, terms, prune=True):
        self.ring = ring
        if prune:
            p = ring.field.p
            cleaned = {}
            for m, c in terms.items():
                m = tuple(m)
                if len(m) != ring.nvars:
                    raise RingMismatchError(
                        "Monomial {0} does not have {1} exponents".format(
                            m, ring.nvars
                        )
                    )
                c %= p
                if c:
                    cleaned[m] = c
            terms = cleaned
        self.terms = terms
        self._sorted = {}

    # -- structure -----------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return "Polynomial({0})".format(format_polynomial(self))

    def __str__(self):
        return format_polynomial(self)

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get(self.ring.unit, 0)

    def total_degree(self):
        if not self.terms:
            raise DegreeError("The zero polynomial has no degree")
        return max(sum(m) for m in self.terms)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=0)

    def is_homogeneous(self):
        return len({sum(m) for m in self.terms}) <= 1

    # -- orderings -----------------------------------------------------------
    def terms_sorted(self, order=GREVLEX):
        """Terms as (monomial, coefficient) pairs, largest first."""
        cached = self._sorted.get(order)
        if cached is None:
            cached = sorted(
                self.terms.items(), key=lambda t: order.key(t[0]), reverse=True
            )
            self._sorted[order] = cached
        return cached

    def leading_term(self, order=GREVLEX):
        if not self.terms:
            raise DegreeError("The zero polynomial has no leading term")
        return self.terms_sorted(order)[0]

    def leading_monomial(self, order=GREVLEX):
        return self.leading_term(order)[0]

    def leading_coefficient(self, order=GREVLEX):
        return self.leading_term(order)[1]

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        lc = self.leading_coefficient(order)
        if lc == 1:
            return self
        return self.scale(field_inverse(lc, self.field))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, int):
            return self.ring.constant(other)
        if not isinstance(other, Polynomial):
            raise TypeError("Cannot combine Polynomial with {0}".format(type(other)))
        if other.ring != self.ring:
            raise RingMismatchError(
                "Ring mismatch: {0} vs {1}".format(self.ring, other.ring)
            )
        return other

    def __add__(self, other):
        other = self._coerce(other)
        p = self.field.p
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = (res.get(m, 0) + c) % p
            if v:
                res[m] = v
            else:
                res.pop(m, None)
        return Polynomial(self.ring, res, prune=False)

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return Polynomial(self.ring, {m: p - c for m, c in self.terms.items()}, False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.terms and other.terms:
            _check_product_exponents(_exponent_bounds(self.terms), _exponent_bounds(other.terms))
        p = self.field.p
        res = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                res[m] = res.get(m, 0) + c1 * c2
        return Polynomial(self.ring, res)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise PolynomialError("Negative power {0}".format(e))
        if self.terms and e * self.total_degree() > MAX_EXPONENT:
            raise DegreeError("Exponent overflow raising to power {0}".format(e))
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        p = self.field.p
        c %= p
        if c == 0:
            return self.ring.zero()
        return Polynomial(
            self.ring, {m: (v * c) % p for m, v in self.terms.items()}, prune=False
        )

    def mul_term(self, c, mono):
        p = self.field.p
        c %= p
        if c == 0:
            return self.ring.zero()
        if self.terms:
            _check_product_exponents(_exponent_bounds(self.terms), mono)
        return Polynomial(
            self.ring,
            {
                tuple(x + y for x, y in zip(m, mono)): (v * c) % p
                for m, v in self.terms.items()
            },
            prune=False,
        )

    # -- calculus and evaluation ---------------------------------------------
    def partial_derivative(self, i):
        if not 0 <= i < self.ring.nvars:
            raise PolynomialError("No variable with index {0}".format(i))
        res = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                res[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Polynomial(self.ring, res)

    def evaluate(self, point):
        if len(point) != self.ring.nvars:
            raise RingMismatchError(
                "Point has {0} coordinates, ring has {1} variables".format(
                    len(point), self.ring.nvars
                )
            )
        p = self.field.p
        point = [int(x) % p for x in point]
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = (v * pow(x, e, p)) % p
            total += v
        return total % p

    def substitute_variable(self, i, g):
        """f with x_i replaced by the polynomial g of the same ring."""
        if not 0 <= i < self.ring.nvars:
            raise PolynomialError("No variable with index {0}".format(i))
        g = self._coerce(g)
        powers = {0: self.ring.one()}
        result = self.ring.zero()
        for m, c in self.terms.items():
            e = m[i]
            if e not in powers:
                powers[e] = g**e
            rest = m[:i] + (0,) + m[i + 1:]
            result = result + powers[e].mul_term(c, rest)
        return result

    def homogenize(self, d=None):
        """x0^d f(x/x0) in the ring with x0 prepended at index 0."""
        if d is None:
            d = self.total_degree() if self.terms else 0
        if self.terms and d < self.total_degree():
            raise DegreeError(
                "Target degree {0} below polynomial degree {1}".format(
                    d, self.total_degree()
                )
            )
        ring = self.ring.extend(1)
        return Polynomial(
            ring, {(d - sum(m),) + m: c for m, c in self.terms.items()}, prune=False
        )

    def dehomogenize(self, index=0):
        """Set variable `index` to 1 and drop it from the ring."""
        if not 0 <= index < self.ring.nvars:
            raise PolynomialError("No variable with index {0}".format(index))
        ring = PolynomialRing(self.ring.nvars - 1, self.field)
        res = {}
        for m, c in self.terms.items():
            key = m[:index] + m[index + 1:]
            res[key] = res.get(key, 0) + c
        return Polynomial(ring, res)


############################################################################
# functional interface
############################################################################
_ARITH = {
    "add": lambda f, g: f + g,
    "sub": lambda f, g: f - g,
    "mul": lambda f, g: f * g,
}


def poly_arith(f, g, op):
    if f.ring != g.ring:
        raise RingMismatchError("Ring mismatch: {0} vs {1}".format(f.ring, g.ring))
    try:
        return _ARITH[op](f, g)
    except KeyError:
        raise PolynomialError("Unknown operation {0}".format(op)) from None


def partial_derivative(f, i):
    return f.partial_derivative(i)


def homogenize(f, d):
    return f.homogenize(d)


def dehomogenize(f):
    return f.dehomogenize(0)


def evaluate(f, point):
    return f.evaluate(point)


def total_degree(f):
    return f.total_degree()


def divide_exact(f, g, order=GREVLEX):
    """Quotient q with f = q*g; raises PolynomialError if g does not divide f."""
    if f.ring != g.ring:
        raise RingMismatchError("Ring mismatch: {0} vs {1}".format(f.ring, g.ring))
    if g.is_zero():
        raise PolynomialError("Division by the zero polynomial")
    p = f.field.p
    lm_g, lc_g = g.leading_term(order)
    inv = field_inverse(lc_g, f.field)
    g_terms = list(g.terms.items())
    rem = dict(f.terms)
    quotient = {}
    while rem:
        lm = max(rem, key=order.key)
        if not monomial_divides(lm_g, lm):
            raise PolynomialError("Polynomial is not divisible by {0}".format(g))
        qm = monomial_quotient(lm, lm_g)
        qc = (rem[lm] * inv) % p
        quotient[qm] = qc
        for m, c in g_terms:
            mm = tuple(x + y for x, y in zip(m, qm))
            v = (rem.get(mm, 0) - qc * c) % p
            if v:
                rem[mm] = v
            else:
                rem.pop(mm, None)
    return Polynomial(f.ring, quotient, prune=False)


############################################################################
# text serialization
############################################################################
def default_variable_names(n, m=0):
    return ["x{0}".format(i + 1) for i in range(n)] + [
        "l{0}".format(i + 1) for i in range(m)
    ]


def format_monomial(m, names):
    factors = []
    for name, e in zip(names, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("{0}^{1}".format(name, e))
    return "*".join(factors)


def format_polynomial(f, names=None, order=GREVLEX):
    if f.is_zero():
        return "0"
    if names is None:
        names = default_variable_names(f.ring.nvars)
    out = []
    for i, (m, c) in enumerate(f.terms_sorted(order)):
        s = f.field.signed(c)
        magnitude = abs(s)
        body = format_monomial(m, names)
        if not body:
            text = str(magnitude)
        elif magnitude == 1:
            text = body
        else:
            text = "{0}*{1}".format(magnitude, body)
        if i == 0:
            out.append("-" + text if s < 0 else text)
        else:
            out.append(("- " if s < 0 else "+ ") + text)
    return " ".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>\*\*|[-+*^()]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            col = pos + 1
            while col <= len(text) and text[col - 1].isspace():
                col += 1
            raise PolynomialSyntaxError(
                "Unexpected character {0!r}".format(text[col - 1]), column=col
            )
        kind = match.lastgroup
        value = match.group(kind)
        if value == "**":
            value = "^"
        tokens.append((kind, value, match.start(kind) + 1))
        pos = match.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, ring, names):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring
        self.index = {name: i for i, name in enumerate(names)}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise PolynomialSyntaxError(message, column=tok[2])

    def expect(self, value):
        tok = self.peek()
        if tok[1] != value:
            self.fail("Expected {0!r}".format(value), tok)
        return self.advance()

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("Empty polynomial")
        result = self.expression()
        if self.peek()[0] != "end":
            self.fail("Unexpected token {0!r}".format(self.peek()[1]))
        return result

    def expression(self):
        sign = 1
        if self.peek()[1] in ("+", "-"):
            sign = -1 if self.advance()[1] == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def starts_factor(self):
        kind, value, _ = self.peek()
        return kind in ("int", "name") or value == "("

    def term(self):
        result = self.power()
        while True:
            if self.peek()[1] == "*":
                self.advance()
            elif not self.starts_factor():
                return result
            result = result * self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("Exponent must be a nonnegative integer", tok)
            self.advance()
            e = int(tok[1])
            if e > MAX_EXPONENT:
                self.fail("Exponent {0} too large".format(e), tok)
            base = base**e
        return base

    def atom(self):
        tok = self.peek()
        kind, value, column = tok
        if kind == "int":
            self.advance()
            return self.ring.constant(int(value))
        if kind == "name":
            self.advance()
            if value not in self.index:
                raise UnknownVariableError(
                    "Unknown variable {0!r}".format(value), column=column
                )
            return self.ring.variable(self.index[value])
        if value == "(":
            self.advance()
            inner = self.expression()
            self.expect(")")
            return inner
        if value in ("+", "-"):
            self.advance()
            inner = self.power()
            return -inner if value == "-" else inner
        self.fail("Unexpected token {0!r}".format(value), tok)


def parse_polynomial(text, ring, names=None):
    """Parse `text` into `ring`; integer literals are reduced mod p."""
    if names is None:
        names = default_variable_names(ring.nvars)
    if len(names) != ring.nvars:
        raise RingMismatchError(
            "{0} names given for {1} variables".format(len(names), ring.nvars)
        )
    return _Parser(text, ring, names).parse()
