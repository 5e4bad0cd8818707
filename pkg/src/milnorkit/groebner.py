"""Buchberger engine over the rationals, graded reverse lex throughout.

Internally polynomials are primitive integer-coefficient term maps;
content is stripped after every reduction so coefficient growth stays
tame without leaving exact arithmetic.  Pair management follows the
Gebauer-Moller update (product and chain criteria), which is entirely
adequate at the toolkit's scale (<= 8 variables, generator degree <= 6).

On top of the basis sit the consumers: unique normal forms, Krull
dimension of the quotient via independent variable subsets modulo the
leading-term ideal, the standard-monomial basis of zero-dimensional
quotients, and Milnor numbers.

Local-versus-global caveat: the dimension-zero machinery works in the
global graded ring.  When the only complex zero of the ideal is the
origin (always true for the homogeneous gradient ideals in scope) the
global quotient *is* the local algebra at 0; this is decided exactly by
a nilpotency check, and inputs that fail it are flagged as requiring
local standard bases rather than silently mis-handled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .poly import (Polynomial, VariableContext, grevlex_key, monomial_div,
                   monomial_divides, monomial_lcm, monomial_mul)

IntPoly = Dict[tuple, int]  # primitive integer term map


# ---------------------------------------------------------------------------
# integer-coefficient kernel


def _to_intpoly(p: Polynomial) -> IntPoly:
    if p.is_zero:
        return {}
    denom = 1
    for c in p.terms.values():
        denom = denom * c.denominator // gcd(denom, c.denominator)
    terms = {m: int(c * denom) for m, c in p.terms.items()}
    return _primitive(terms)


def _primitive(terms: IntPoly) -> IntPoly:
    if not terms:
        return {}
    g = 0
    for c in terms.values():
        g = gcd(g, abs(c))
        if g == 1:
            break
    lead = max(terms, key=grevlex_key)
    sign = 1 if terms[lead] > 0 else -1
    g *= sign
    if g != 1:
        return {m: c // g for m, c in terms.items()}
    return dict(terms)


def _lm(terms: IntPoly) -> tuple:
    return max(terms, key=grevlex_key)


def _mul_term(terms: IntPoly, mono: tuple, coeff: int) -> IntPoly:
    return {monomial_mul(m, mono): c * coeff for m, c in terms.items()}


def _sub_scaled(a: IntPoly, scale_a: int, b: IntPoly, mono: tuple, scale_b: int) -> IntPoly:
    """scale_a * a - scale_b * x^mono * b, as a fresh term map."""
    out = {m: c * scale_a for m, c in a.items()} if scale_a != 1 else dict(a)
    for m, c in b.items():
        key = monomial_mul(m, mono)
        acc = out.get(key, 0) - scale_b * c
        if acc:
            out[key] = acc
        else:
            out.pop(key, None)
    return out


def _reduce(p: IntPoly, basis: Sequence[IntPoly], lms: Sequence[tuple],
            full: bool = True) -> IntPoly:
    """Normal form of p modulo basis (top reduction plus tail when full)."""
    if not p:
        return {}
    work = dict(p)
    result: IntPoly = {}
    while work:
        lead = max(work, key=grevlex_key)
        reduced = False
        for g, lm in zip(basis, lms):
            if monomial_divides(lm, lead):
                quot = monomial_div(lead, lm)
                ca = work[lead]
                cb = g[lm]
                d = gcd(ca, cb)
                work = _sub_scaled(work, cb // d, g, quot, ca // d)
                if result:
                    scale = cb // d
                    if scale != 1:
                        result = {m: c * scale for m, c in result.items()}
                reduced = True
                break
        if not reduced:
            if not full:
                for m, c in work.items():
                    result[m] = result.get(m, 0) + c
                break
            result[lead] = result.get(lead, 0) + work.pop(lead)
    return _primitive(result)


def _spoly(f: IntPoly, g: IntPoly, lmf: tuple, lmg: tuple) -> IntPoly:
    lcm = monomial_lcm(lmf, lmg)
    cf, cg = f[lmf], g[lmg]
    d = gcd(cf, cg)
    out = _mul_term(f, monomial_div(lcm, lmf), cg // d)
    for m, c in _mul_term(g, monomial_div(lcm, lmg), cf // d).items():
        acc = out.get(m, 0) - c
        if acc:
            out[m] = acc
        else:
            out.pop(m, None)
    return out


def _disjoint(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger_int(gens: List[IntPoly]) -> List[IntPoly]:
    """Reduced basis computation on primitive integer polynomials."""
    import heapq

    basis: List[IntPoly] = []
    lms: List[tuple] = []
    heap: list = []          # (grevlex key of lcm, seq, i, j)
    alive: Dict[Tuple[int, int], tuple] = {}  # (i, j) -> lcm
    seq = 0

    def update(new: IntPoly):
        """Gebauer-Moller pair update for one new basis element."""
        nonlocal seq
        h = len(basis)
        lmh = _lm(new)
        candidates = [(monomial_lcm(lms[i], lmh), i) for i in range(h)]
        # criterion M: drop (i,h) when some (j,h) has a strictly smaller
        # lcm dividing lcm(i,h)
        kept = []
        for lcm_i, i in candidates:
            dominated = any(
                lcm_j != lcm_i and monomial_divides(lcm_j, lcm_i)
                for lcm_j, j in candidates if j != i)
            if not dominated:
                kept.append((lcm_i, i))
        # criterion F: among equal lcms keep a single representative
        by_lcm: Dict[tuple, int] = {}
        for lcm_i, i in kept:
            by_lcm.setdefault(lcm_i, i)
        # chain criterion on pending old pairs
        for (i, j), lcm_ij in list(alive.items()):
            if (monomial_divides(lmh, lcm_ij)
                    and monomial_lcm(lms[i], lmh) != lcm_ij
                    and monomial_lcm(lms[j], lmh) != lcm_ij):
                del alive[(i, j)]
        # criterion B (product criterion) is applied last so the dropped
        # pairs still participated in M/F filtering above
        for lcm_i, i in sorted(by_lcm.items(), key=lambda kv: grevlex_key(kv[0])):
            if _disjoint(lms[i], lmh):
                continue
            alive[(i, h)] = lcm_i
            heapq.heappush(heap, (grevlex_key(lcm_i), seq, i, h))
            seq += 1
        basis.append(new)
        lms.append(lmh)

    for g in gens:
        if not g:
            continue
        r = _reduce(g, basis, lms, full=True)
        if r:
            update(r)
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if alive.pop((i, j), None) is None:
            continue
        s = _spoly(basis[i], basis[j], lms[i], lms[j])
        r = _reduce(s, basis, lms, full=True)
        if r:
            update(r)
    return _interreduce(basis)


def _interreduce(basis: List[IntPoly]) -> List[IntPoly]:
    """Minimalize and self-reduce, yielding the unique reduced basis."""
    if not basis:
        return []
    # drop elements whose leading monomial is divisible by another's
    items = sorted(basis, key=lambda f: grevlex_key(_lm(f)))
    minimal: List[IntPoly] = []
    for f in items:
        lmf = _lm(f)
        if any(monomial_divides(_lm(g), lmf) for g in minimal):
            continue
        minimal.append(f)
    # tail-reduce each against the others
    reduced: List[IntPoly] = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        lms = [_lm(g) for g in others]
        r = _reduce(f, others, lms, full=True)
        if r:
            reduced.append(r)
    reduced.sort(key=lambda f: grevlex_key(_lm(f)))
    return reduced


# ---------------------------------------------------------------------------
# public surface


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis under grevlex (monic, self-reduced)."""
    ctx: VariableContext
    generators: List[Polynomial]
    reduced: bool = True

    @property
    def is_unit_ideal(self) -> bool:
        return any(g.total_degree() == 0 and not g.is_zero for g in self.generators)

    @property
    def is_zero_ideal(self) -> bool:
        return not self.generators

    def leading_monomials(self) -> List[tuple]:
        return [g.leading_monomial() for g in self.generators]


def buchberger(gens: Sequence[Polynomial]) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by `gens`.

    The zero ideal yields an empty basis; the unit ideal yields {1}.
    The output is independent of generator order (reduced-basis
    uniqueness), which the property suite exercises.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    ctx = gens[0].ctx
    int_basis = _buchberger_int([_to_intpoly(g) for g in gens])
    out = []
    for f in int_basis:
        lead = f[_lm(f)]
        poly = Polynomial(ctx, {m: Fraction(c, lead) for m, c in f.items()})
        out.append(poly)
    out.sort(key=lambda g: grevlex_key(g.leading_monomial()))
    return GroebnerBasis(ctx=ctx, generators=out)


def normal_form(p: Polynomial, gb: GroebnerBasis) -> Polynomial:
    """Unique remainder of p modulo the reduced basis."""
    if not gb.reduced:
        raise ValueError("normal forms require a reduced basis")
    if p.is_zero or gb.is_zero_ideal:
        return p
    work = {m: c for m, c in p.terms.items()}
    result: Dict[tuple, Fraction] = {}
    lms = [g.leading_monomial() for g in gb.generators]
    while work:
        lead = max(work, key=grevlex_key)
        coeff = work[lead]
        hit = None
        for g, lm in zip(gb.generators, lms):
            if monomial_divides(lm, lead):
                hit = (g, lm)
                break
        if hit is None:
            result[lead] = coeff
            del work[lead]
            continue
        g, lm = hit
        quot = monomial_div(lead, lm)
        factor = coeff / g.terms[lm]
        for m, c in g.terms.items():
            key = monomial_mul(m, quot)
            acc = work.get(key, Fraction(0)) - factor * c
            if acc:
                work[key] = acc
            else:
                work.pop(key, None)
    return Polynomial(p.ctx, result)


def ideal_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the quotient ring.

    Computed as the maximum cardinality of a variable subset S with no
    leading monomial supported inside S; -1 for the unit ideal, full
    arity for the zero ideal.
    """
    n = gb.ctx.arity
    if gb.is_zero_ideal:
        return n
    if gb.is_unit_ideal:
        return -1
    lt = gb.leading_monomials()

    def independent(S: frozenset) -> bool:
        for e in lt:
            if all(e[i] == 0 or i in S for i in range(n)):
                return False
        return True

    for r in range(n, -1, -1):
        for S in itertools.combinations(range(n), r):
            if independent(frozenset(S)):
                return r
    return -1


class NotZeroDimensional(ValueError):
    """The quotient is not finite-dimensional."""


@dataclass
class QuotientAlgebra:
    """Finite-dimensional quotient presented on its standard monomials."""
    gb: GroebnerBasis
    basis: List[tuple]            # standard monomials, grevlex-increasing
    dim: int

    def __post_init__(self):
        self._index = {m: i for i, m in enumerate(self.basis)}
        self._mult_cache: Dict[Tuple[tuple, tuple], Polynomial] = {}

    def reduce(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self.gb)

    def multiply(self, a: tuple, b: tuple) -> Polynomial:
        """Normal form of the product of two standard monomials."""
        key = (a, b) if a <= b else (b, a)
        hit = self._mult_cache.get(key)
        if hit is None:
            prod = Polynomial.monomial(self.gb.ctx, monomial_mul(a, b))
            hit = normal_form(prod, self.gb)
            self._mult_cache[key] = hit
        return hit

    def coordinates(self, p: Polynomial) -> List[Fraction]:
        """Coordinates of the class of p in the standard-monomial basis."""
        nf = self.reduce(p)
        coords = [Fraction(0)] * self.dim
        for m, c in nf.terms.items():
            coords[self._index[m]] = c
        return coords


def quotient_algebra(gb: GroebnerBasis) -> QuotientAlgebra:
    """Standard-monomial basis of a zero-dimensional quotient."""
    n = gb.ctx.arity
    if gb.is_unit_ideal:
        return QuotientAlgebra(gb=gb, basis=[], dim=0)
    if gb.is_zero_ideal:
        raise NotZeroDimensional("quotient not finite-dimensional (zero ideal)")
    lt = gb.leading_monomials()
    bounds = []
    for i in range(n):
        bound = None
        for e in lt:
            if all(e[j] == 0 for j in range(n) if j != i):
                bound = e[i] if bound is None else min(bound, e[i])
        if bound is None:
            raise NotZeroDimensional(
                "quotient not finite-dimensional (no pure power of %s in the "
                "leading-term ideal)" % gb.ctx.names[i])
        bounds.append(bound)
    basis = []
    for mono in itertools.product(*[range(b) for b in bounds]):
        if not any(monomial_divides(e, mono) for e in lt):
            basis.append(mono)
    basis.sort(key=grevlex_key)
    return QuotientAlgebra(gb=gb, basis=basis, dim=len(basis))


def origin_only_zero(qa: QuotientAlgebra) -> bool:
    """True iff the only complex zero of the ideal is the origin.

    Exact nilpotency test: x_i is nilpotent modulo a zero-dimensional
    ideal iff x_i^(dim Q) reduces to zero, and the origin is the only
    complex zero iff every variable is nilpotent.
    """
    n = qa.gb.ctx.arity
    bound = max(qa.dim, 1)
    for i in range(n):
        mono = tuple(bound if j == i else 0 for j in range(n))
        if not normal_form(Polynomial.monomial(qa.gb.ctx, mono), qa.gb).is_zero:
            return False
    return True


@dataclass
class MilnorNumberResult:
    """mu(f) together with the data needed by the degree certificate."""
    mu: Optional[int]             # None means infinite
    gb: Optional[GroebnerBasis]
    quotient: Optional[QuotientAlgebra]
    gradient: List[Polynomial]
    local_equals_global: Optional[bool]
    support_note: str


def milnor_number(f: Polynomial) -> MilnorNumberResult:
    """Dimension of R[x]/(grad f), or infinite when positive-dimensional.

    Also decides whether the global graded quotient agrees with the
    local algebra at the origin (origin-only complex zero set); callers
    needing the local degree must check `local_equals_global`.
    """
    grad = f.gradient()
    if all(g.is_zero for g in grad):
        return MilnorNumberResult(mu=None, gb=None, quotient=None, gradient=grad,
                                  local_equals_global=None,
                                  support_note="gradient vanishes identically")
    gb = buchberger(grad)
    try:
        qa = quotient_algebra(gb)
    except NotZeroDimensional:
        return MilnorNumberResult(
            mu=None, gb=gb, quotient=None, gradient=grad,
            local_equals_global=None,
            support_note="gradient ideal is positive-dimensional "
                         "(dimension %d)" % ideal_dimension(gb))
    homogeneous = all(g.is_zero or g.homogeneous_degree() is not None for g in grad)
    if homogeneous:
        local = True
        note = "homogeneous gradient ideal; global quotient is the local algebra"
    elif origin_only_zero(qa):
        local = True
        note = ("origin is the only complex zero of the gradient ideal; "
                "global quotient is the local algebra")
    else:
        local = False
        note = ("unsupported: requires local standard bases (gradient ideal "
                "has complex zeros away from the origin)")
    return MilnorNumberResult(mu=qa.dim, gb=gb, quotient=qa, gradient=grad,
                              local_equals_global=local, support_note=note)
