"""Evidence search for nonzero real common zeros of a polynomial system.

Whether V_F = F^{-1}(0) contains points besides the origin is not
decidable by the ideal machinery over the rationals alone, so the
classifier works with *evidence*:

* a deterministic rational grid search (small support, small values)
  that can exhibit an exact nonzero common zero, and
* a line-restriction search: all but one variable are pinned to grid
  values, the components restrict to univariate polynomials, and a
  common nonzero real root of their gcd is certified by an exact Sturm
  count on an isolating interval.

A returned witness is a proof that V_F strictly contains the origin; a
clean search is only evidence in the other direction and is reported as
such.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .poly import Polynomial

# ---------------------------------------------------------------------------
# exact univariate helpers (coefficient lists, index = degree)


def uni_trim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def uni_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for coeff in reversed(c):
        acc = acc * x + coeff
    return acc


def uni_deriv(c: Sequence[Fraction]) -> List[Fraction]:
    return uni_trim([c[i] * i for i in range(1, len(c))])


def uni_rem(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and uni_trim(a):
        da = len(a) - 1
        factor = a[-1] / lb
        shift = da - db
        for i in range(len(b)):
            a[i + shift] -= factor * b[i]
        a = uni_trim(a)
        if not a:
            break
    return a


def uni_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a, b = uni_trim(list(a)), uni_trim(list(b))
    while b:
        a, b = b, uni_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def sturm_sequence(c: Sequence[Fraction]) -> List[List[Fraction]]:
    p0 = uni_trim(list(c))
    seq = [p0, uni_deriv(p0)]
    while seq[-1]:
        r = uni_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return [s for s in seq if s]


def _sign_changes(values: List[Fraction]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(c: Sequence[Fraction], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots of c in the half-open interval (a, b]."""
    p = uni_trim(list(c))
    if len(p) <= 1:
        return 0
    g = uni_gcd(p, uni_deriv(p))
    if len(g) > 1:
        # square-free part via exact division p / g
        p = _uni_div_exact(p, g)
    seq = sturm_sequence(p)
    va = _sign_changes([uni_eval(s, a) for s in seq])
    vb = _sign_changes([uni_eval(s, b) for s in seq])
    return va - vb


def _uni_div_exact(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * (len(a) - db)
    while len(a) - 1 >= db and uni_trim(list(a)):
        da = len(a) - 1
        factor = a[-1] / lb
        q[da - db] = factor
        for i in range(len(b)):
            a[i + (da - db)] -= factor * b[i]
        a = uni_trim(a)
        if not a:
            break
    return uni_trim(q)


def cauchy_bound(c: Sequence[Fraction]) -> Fraction:
    lead = c[-1]
    if not any(x for x in c[:-1]):
        return Fraction(1)
    return 1 + max(abs(x / lead) for x in c[:-1])


def isolate_nonzero_root(c: Sequence[Fraction]) -> Optional[Tuple[Fraction, Fraction]]:
    """An interval (a, b] containing exactly one nonzero real root, if any."""
    p = uni_trim(list(c))
    # strip roots at the origin
    k = 0
    while k < len(p) and p[k] == 0:
        k += 1
    p = p[k:]
    if len(p) <= 1:
        return None
    bound = cauchy_bound(p)
    for lo, hi in ((Fraction(0), bound), (-bound, Fraction(0))):
        total = count_real_roots(p, lo, hi)
        if total == 0:
            continue
        for _ in range(128):
            if total == 1 and hi - lo <= 1:
                return (lo, hi)
            mid = (lo + hi) / 2
            left = count_real_roots(p, lo, mid)
            if left >= 1:
                hi, total = mid, left
            else:
                lo, total = mid, count_real_roots(p, mid, hi)
        return (lo, hi)
    return None


# ---------------------------------------------------------------------------
# witnesses


@dataclass
class ZeroWitness:
    """Certificate that the system vanishes at a nonzero real point."""
    kind: str                      # rational_point | line_root
    point: Optional[List[Fraction]]        # rational_point only
    base: Optional[List[Fraction]] = None  # line_root: pinned coordinates
    free_index: Optional[int] = None       # line_root: the free variable
    restriction: Optional[List[Fraction]] = None  # gcd of the restrictions
    interval: Optional[Tuple[Fraction, Fraction]] = None

    def describe(self, names: Sequence[str]) -> str:
        if self.kind == "rational_point":
            coords = ", ".join("%s = %s" % (n, v) for n, v in zip(names, self.point) if v)
            return "exact rational zero at {%s}" % coords
        pins = ", ".join("%s = %s" % (names[i], v)
                         for i, v in enumerate(self.base) if i != self.free_index and v)
        pins = pins or "all other coordinates 0"
        lo, hi = self.interval
        return ("real zero on the line {%s} with %s in (%s, %s]: common root of a "
                "degree-%d restriction, certified by Sturm count"
                % (pins, names[self.free_index], lo, hi, len(self.restriction) - 1))


_GRID_VALUES = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2),
                Fraction(1, 2), Fraction(-1, 2)]
_PIN_VALUES = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]


def find_nonzero_real_zero(polys: Sequence[Polynomial],
                           max_support: int = 3,
                           max_pins: int = 2) -> Optional[ZeroWitness]:
    """Deterministic search for a common real zero other than the origin."""
    polys = [p for p in polys]
    if not polys:
        return None
    n = polys[0].ctx.arity
    max_support = min(max_support, n)

    # stage 1: rational grid, ordered by support size then position
    for size in range(1, max_support + 1):
        for support in itertools.combinations(range(n), size):
            for values in itertools.product(_GRID_VALUES, repeat=size):
                point = [Fraction(0)] * n
                for i, v in zip(support, values):
                    point[i] = v
                if all(p.evaluate(point) == 0 for p in polys):
                    return ZeroWitness(kind="rational_point", point=point)

    # stage 2: line restrictions with exact Sturm certification
    for free in range(n):
        others = [i for i in range(n) if i != free]
        for pins in range(0, min(max_pins, len(others)) + 1):
            for support in itertools.combinations(others, pins):
                for values in itertools.product(_PIN_VALUES, repeat=pins):
                    base = [Fraction(0)] * n
                    for i, v in zip(support, values):
                        base[i] = v
                    witness = _line_probe(polys, base, free)
                    if witness is not None:
                        return witness
    return None


def _line_probe(polys, base, free) -> Optional[ZeroWitness]:
    n = len(base)
    assignment = {i: base[i] for i in range(n) if i != free}
    restrictions = []
    for p in polys:
        r = p.substitute(assignment)
        coeffs: List[Fraction] = []
        for mono, c in r.terms.items():
            d = mono[free]
            while len(coeffs) <= d:
                coeffs.append(Fraction(0))
            coeffs[d] += c
        coeffs = uni_trim(coeffs)
        if len(coeffs) == 1:
            return None  # a nonzero constant restriction: no zero on this line
        restrictions.append(coeffs)
    nonzero = [c for c in restrictions if c]
    if not nonzero:
        # the whole line lies in the zero set; any nonzero parameter works
        point = list(base)
        point[free] = Fraction(1)
        if any(point):
            return ZeroWitness(kind="rational_point", point=point)
        return None
    g = nonzero[0]
    for c in nonzero[1:]:
        g = uni_gcd(g, c)
        if len(g) <= 1:
            return None
    interval = isolate_nonzero_root(g)
    if interval is None:
        return None
    return ZeroWitness(kind="line_root", point=None, base=base, free_index=free,
                       restriction=g, interval=interval)
