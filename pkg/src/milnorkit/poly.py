"""Exact sparse multivariate polynomials over the rationals.

Everything downstream (forms, Gram matrices, Groebner bases, degree
certificates) is built on the two classes here.  Coefficients are
`fractions.Fraction`, so every identity the toolkit reports is exact;
no floating point enters the symbolic layer.

Monomials are exponent tuples, one slot per variable of the ambient
context.  Variable identity is positional: names are metadata used for
parsing and printing, and two objects are compatible whenever their
contexts have the same arity.  One monomial order (graded reverse
lexicographic) is used everywhere, both for canonical printing and for
the Groebner machinery.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Monomial = tuple  # exponent tuple, len == arity
Coefficient = Union[int, Fraction]

#: distinguished homogeneity answer for the zero polynomial, which is
#: homogeneous of every degree at once
ZERO_HOMOGENEOUS = "zero"


class ContextMismatch(ValueError):
    """Raised when operands live over incompatible variable contexts."""


class VariableContext:
    """An ordered tuple of distinct variable names.

    Compatibility between polynomials, forms and vector fields is a
    single arity check; the names only matter for parsing/printing.
    """

    __slots__ = ("names",)

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(names) < 1:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct: %r" % (names,))
        self.names = names

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError("unknown variable %r (context has %s)" % (name, ", ".join(self.names)))

    def compatible(self, other: "VariableContext") -> bool:
        return self.arity == other.arity

    def __eq__(self, other):
        return isinstance(other, VariableContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VariableContext(%s)" % ", ".join(self.names)


def grevlex_key(mono: Monomial):
    """Sort key realizing graded reverse lexicographic order.

    m1 > m2 in grevlex iff grevlex_key(m1) > grevlex_key(m2): first by
    total degree, ties broken by the *smallest* exponent in the *last*
    position where the monomials differ.
    """
    return (sum(mono), tuple(-e for e in reversed(mono)))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """True iff monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Polynomial:
    """Canonical-form sparse polynomial: a map monomial -> nonzero Fraction.

    Instances are immutable; all arithmetic returns fresh objects, so
    values can be shared freely between threads.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VariableContext, terms: Mapping[Monomial, Coefficient]):
        self.ctx = ctx
        clean = {}
        for mono, coeff in terms.items():
            if len(mono) != ctx.arity:
                raise ContextMismatch("monomial %r does not match arity %d" % (mono, ctx.arity))
            if any(e < 0 for e in mono):
                raise ValueError("negative exponent in %r" % (mono,))
            coeff = Fraction(coeff)
            if coeff:
                clean[tuple(mono)] = coeff
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def zero(cls, ctx: VariableContext) -> "Polynomial":
        return cls(ctx, {})

    @classmethod
    def constant(cls, ctx: VariableContext, value: Coefficient) -> "Polynomial":
        return cls(ctx, {(0,) * ctx.arity: Fraction(value)})

    @classmethod
    def one(cls, ctx: VariableContext) -> "Polynomial":
        return cls.constant(ctx, 1)

    @classmethod
    def variable(cls, ctx: VariableContext, index: int) -> "Polynomial":
        if not 0 <= index < ctx.arity:
            raise IndexError("variable index %d out of range for arity %d" % (index, ctx.arity))
        mono = tuple(1 if i == index else 0 for i in range(ctx.arity))
        return cls(ctx, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, ctx: VariableContext, mono: Monomial, coeff: Coefficient = 1) -> "Polynomial":
        return cls(ctx, {tuple(mono): Fraction(coeff)})

    # ------------------------------------------------------------------
    # queries

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def homogeneous_degree(self):
        """The common total degree of all terms.

        Returns the integer degree for a homogeneous nonzero polynomial,
        ``ZERO_HOMOGENEOUS`` for the zero polynomial (homogeneous of
        every degree), and None when term degrees mix.
        """
        if not self.terms:
            return ZERO_HOMOGENEOUS
        degrees = {sum(m) for m in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def constant_value(self) -> Fraction:
        """The value of a degree-<=0 polynomial; error otherwise."""
        if self.is_zero:
            return Fraction(0)
        if self.total_degree() > 0:
            raise ValueError("polynomial is not constant: %s" % self)
        return self.terms[(0,) * self.ctx.arity]

    # ------------------------------------------------------------------
    # ring operations

    def _check(self, other: "Polynomial") -> None:
        if not self.ctx.compatible(other.ctx):
            raise ContextMismatch(
                "arity mismatch: %d vs %d" % (self.ctx.arity, other.ctx.arity))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        self._check(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, Fraction(0)) + coeff
            if acc:
                terms[mono] = acc
            else:
                terms.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.ctx, out.terms = self.ctx, terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Polynomial.__new__(Polynomial)
        out.ctx = self.ctx
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            coeff = Fraction(other)
            out = Polynomial.__new__(Polynomial)
            out.ctx = self.ctx
            out.terms = {m: c * coeff for m, c in self.terms.items()} if coeff else {}
            return out
        self._check(other)
        terms: dict = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                mono = monomial_mul(m1, m2)
                acc = terms.get(mono, Fraction(0)) + c1 * c2
                if acc:
                    terms[mono] = acc
                else:
                    terms.pop(mono, None)
        out = Polynomial.__new__(Polynomial)
        out.ctx, out.terms = self.ctx, terms
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx.arity == other.ctx.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx.arity, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # calculus and evaluation

    def partial_derivative(self, var: int) -> "Polynomial":
        """Formal partial derivative with respect to variable `var`."""
        if not 0 <= var < self.ctx.arity:
            raise IndexError("variable index %d out of range for arity %d" % (var, self.ctx.arity))
        terms = {}
        for mono, coeff in self.terms.items():
            e = mono[var]
            if e == 0:
                continue
            new = list(mono)
            new[var] = e - 1
            terms[tuple(new)] = coeff * e
        out = Polynomial.__new__(Polynomial)
        out.ctx, out.terms = self.ctx, terms
        return out

    def gradient(self) -> list:
        return [self.partial_derivative(i) for i in range(self.ctx.arity)]

    def evaluate(self, point: Sequence[Coefficient]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.ctx.arity:
            raise ValueError("point length %d does not match arity %d" % (len(point), self.ctx.arity))
        point = [Fraction(v) for v in point]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            val = coeff
            for base, e in zip(point, mono):
                if e:
                    val *= base ** e
            total += val
        return total

    def evaluate_float(self, point: Sequence[float]) -> float:
        """Float value, for the numerical oracles only."""
        total = 0.0
        for mono, coeff in self.terms.items():
            val = float(coeff)
            for base, e in zip(point, mono):
                if e:
                    val *= base ** e
            total += val
        return total

    def substitute(self, assignment: Mapping[int, Coefficient]) -> "Polynomial":
        """Plug exact rational values into a subset of the variables.

        The result stays in the same context, with the substituted
        variables eliminated from every monomial.
        """
        values = {i: Fraction(v) for i, v in assignment.items()}
        terms: dict = {}
        for mono, coeff in self.terms.items():
            c = coeff
            new = list(mono)
            for i, v in values.items():
                e = mono[i]
                if e:
                    c *= v ** e
                new[i] = 0
            if not c:
                continue
            key = tuple(new)
            acc = terms.get(key, Fraction(0)) + c
            if acc:
                terms[key] = acc
            else:
                terms.pop(key, None)
        out = Polynomial.__new__(Polynomial)
        out.ctx, out.terms = self.ctx, terms
        return out

    # ------------------------------------------------------------------
    # printing

    def sorted_terms(self):
        """Terms in descending grevlex order (the canonical print order)."""
        return sorted(self.terms.items(), key=lambda kv: grevlex_key(kv[0]), reverse=True)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return "Polynomial(%s)" % self.to_string()

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ctx.names, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append("%s^%d" % (name, e))
            mag = abs(coeff)
            if not factors:
                body = _coeff_str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = _coeff_str(mag) + "*" + "*".join(factors)
            if not pieces:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)


def _coeff_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def poly_dot(u: Iterable[Polynomial], v: Iterable[Polynomial]) -> Polynomial:
    """Euclidean inner product of two polynomial vectors."""
    u = list(u)
    v = list(v)
    if len(u) != len(v):
        raise ValueError("vector length mismatch: %d vs %d" % (len(u), len(v)))
    total = Polynomial.zero(u[0].ctx)
    for a, b in zip(u, v):
        total = total + a * b
    return total


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square polynomial matrix.

    Cofactor expansion with memoization over column subsets; fine for
    the small (<= 8 x 8) matrices the toolkit meets.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    ctx = matrix[0][0].ctx
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    cache: dict = {}

    def minor(row: int, cols: tuple) -> Polynomial:
        if row == n:
            return Polynomial.one(ctx)
        key = cols
        hit = cache.get(key)
        if hit is not None:
            return hit
        total = Polynomial.zero(ctx)
        for pos, col in enumerate(cols):
            entry = matrix[row][col]
            if entry.is_zero:
                continue
            sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
            term = entry * sub
            total = total + (term if pos % 2 == 0 else -term)
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))
