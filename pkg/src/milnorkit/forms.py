"""Exterior calculus with polynomial coefficients on Euclidean space.

Differential k-forms are stored as maps from strictly increasing index
tuples to polynomial coefficients.  Alongside the basic operations
(wedge, exterior derivative, contraction, Lie bracket) this module
houses the integrability checks: the Frobenius condition for systems of
1-forms, involutivity of distributions spanned by vector fields, and
first-integral verification against characteristic vector fields.

Residuals are always reported as full polynomial objects, never mere
booleans: the entire value of the checker is exhibiting the exact
nonzero obstruction when a claimed identity fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .poly import ContextMismatch, Polynomial, VariableContext


def _merge_sign(left: tuple, right: tuple):
    """Merge two increasing index tuples, returning (sign, merged) or None
    when they share an index (the wedge of repeated covectors is zero)."""
    if set(left) & set(right):
        return None
    merged = left + right
    # count inversions moving `right` indices past `left` ones
    inversions = 0
    for r in right:
        inversions += sum(1 for l in left if l > r)
    order = tuple(sorted(merged))
    return (-1) ** inversions, order


class DiffForm:
    """A polynomial differential form of fixed degree."""

    __slots__ = ("ctx", "degree", "coeffs")

    def __init__(self, ctx: VariableContext, degree: int,
                 coeffs: Dict[Tuple[int, ...], Polynomial]):
        if degree < 0:
            raise ValueError("negative form degree")
        if degree > ctx.arity and coeffs:
            raise ValueError("a nonzero %d-form cannot exist in %d variables" % (degree, ctx.arity))
        self.ctx = ctx
        self.degree = degree
        clean = {}
        for idx, poly in coeffs.items():
            idx = tuple(idx)
            if len(idx) != degree or list(idx) != sorted(set(idx)):
                raise ValueError("index tuple %r is not strictly increasing of length %d" % (idx, degree))
            if any(not 0 <= i < ctx.arity for i in idx):
                raise ValueError("index out of range in %r" % (idx,))
            if not poly.is_zero:
                clean[idx] = poly
        self.coeffs = clean

    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, ctx: VariableContext, degree: int) -> "DiffForm":
        return cls(ctx, degree, {})

    @classmethod
    def from_function(cls, f: Polynomial) -> "DiffForm":
        return cls(f.ctx, 0, {(): f})

    @classmethod
    def one_form(cls, coeffs: Sequence[Polynomial]) -> "DiffForm":
        ctx = coeffs[0].ctx
        if len(coeffs) != ctx.arity:
            raise ValueError("a 1-form needs one coefficient per variable")
        return cls(ctx, 1, {(i,): c for i, c in enumerate(coeffs) if not c.is_zero})

    @classmethod
    def basis_covector(cls, ctx: VariableContext, index: int) -> "DiffForm":
        return cls(ctx, 1, {(index,): Polynomial.one(ctx)})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "DiffForm"):
        if not self.ctx.compatible(other.ctx):
            raise ContextMismatch("form arity mismatch: %d vs %d" % (self.ctx.arity, other.ctx.arity))

    def __add__(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of degrees %d and %d" % (self.degree, other.degree))
        coeffs = dict(self.coeffs)
        for idx, poly in other.coeffs.items():
            acc = coeffs.get(idx)
            acc = poly if acc is None else acc + poly
            if acc.is_zero:
                coeffs.pop(idx, None)
            else:
                coeffs[idx] = acc
        return DiffForm(self.ctx, self.degree, coeffs)

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.ctx, self.degree, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)

    def scale(self, factor) -> "DiffForm":
        return DiffForm(self.ctx, self.degree,
                        {i: p * factor for i, p in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, DiffForm) and self.degree == other.degree
                and self.ctx.arity == other.ctx.arity and self.coeffs == other.coeffs)

    def __repr__(self):
        return "DiffForm(%s)" % self.to_string()

    def to_string(self) -> str:
        if not self.coeffs:
            return "0"
        names = self.ctx.names
        pieces = []
        for idx in sorted(self.coeffs):
            poly = self.coeffs[idx]
            basis = "^".join("d%s" % names[i] for i in idx) if idx else ""
            body = "(%s)" % poly.to_string()
            pieces.append("%s %s" % (body, basis) if basis else body)
        return " + ".join(pieces)

    # ------------------------------------------------------------------
    # graded operations

    def wedge(self, other: "DiffForm") -> "DiffForm":
        self._check(other)
        degree = self.degree + other.degree
        if degree > self.ctx.arity:
            return DiffForm.zero(self.ctx, degree)
        coeffs: dict = {}
        for idx1, p1 in self.coeffs.items():
            for idx2, p2 in other.coeffs.items():
                merged = _merge_sign(idx1, idx2)
                if merged is None:
                    continue
                sign, order = merged
                term = p1 * p2
                if sign < 0:
                    term = -term
                acc = coeffs.get(order)
                acc = term if acc is None else acc + term
                if acc.is_zero:
                    coeffs.pop(order, None)
                else:
                    coeffs[order] = acc
        return DiffForm(self.ctx, degree, coeffs)

    def exterior_derivative(self) -> "DiffForm":
        n = self.ctx.arity
        degree = self.degree + 1
        if degree > n:
            return DiffForm.zero(self.ctx, degree)
        coeffs: dict = {}
        for idx, poly in self.coeffs.items():
            for i in range(n):
                dpoly = poly.partial_derivative(i)
                if dpoly.is_zero:
                    continue
                merged = _merge_sign((i,), idx)
                if merged is None:
                    continue
                sign, order = merged
                term = dpoly if sign > 0 else -dpoly
                acc = coeffs.get(order)
                acc = term if acc is None else acc + term
                if acc.is_zero:
                    coeffs.pop(order, None)
                else:
                    coeffs[order] = acc
        return DiffForm(self.ctx, degree, coeffs)

    def interior_product(self, X: "VectorField") -> "DiffForm":
        """Contraction in the first slot with the standard alternating signs."""
        if not self.ctx.compatible(X.ctx):
            raise ContextMismatch("form/field arity mismatch")
        if self.degree == 0:
            raise ValueError("cannot contract a 0-form")
        coeffs: dict = {}
        for idx, poly in self.coeffs.items():
            for pos, i in enumerate(idx):
                comp = X.components[i]
                if comp.is_zero:
                    continue
                term = poly * comp
                if pos % 2 == 1:
                    term = -term
                rest = idx[:pos] + idx[pos + 1:]
                acc = coeffs.get(rest)
                acc = term if acc is None else acc + term
                if acc.is_zero:
                    coeffs.pop(rest, None)
                else:
                    coeffs[rest] = acc
        return DiffForm(self.ctx, self.degree - 1, coeffs)


def differential(f: Polynomial) -> DiffForm:
    """df as a 1-form."""
    return DiffForm.one_form(f.gradient())


def wedge_all(forms: Sequence[DiffForm]) -> DiffForm:
    result = forms[0]
    for form in forms[1:]:
        result = result.wedge(form)
    return result


class VectorField:
    """A polynomial vector field: one component per variable."""

    __slots__ = ("ctx", "components")

    def __init__(self, components: Sequence[Polynomial]):
        components = list(components)
        ctx = components[0].ctx
        if len(components) != ctx.arity:
            raise ValueError("a vector field needs one component per variable")
        self.ctx = ctx
        self.components = components

    @classmethod
    def basis(cls, ctx: VariableContext, index: int) -> "VectorField":
        comps = [Polynomial.zero(ctx) for _ in range(ctx.arity)]
        comps[index] = Polynomial.one(ctx)
        return cls(comps)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def apply_to(self, f: Polynomial) -> Polynomial:
        """Directional derivative X(f) = sum_i X_i * df/dx_i."""
        total = Polynomial.zero(self.ctx)
        for i, comp in enumerate(self.components):
            if not comp.is_zero:
                total = total + comp * f.partial_derivative(i)
        return total

    def lie_bracket(self, other: "VectorField") -> "VectorField":
        """[X, Y], componentwise X(Y_i) - Y(X_i)."""
        if not self.ctx.compatible(other.ctx):
            raise ContextMismatch("field arity mismatch")
        return VectorField([
            self.apply_to(other.components[i]) - other.apply_to(self.components[i])
            for i in range(self.ctx.arity)
        ])

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __repr__(self):
        body = ", ".join(p.to_string() for p in self.components)
        return "VectorField(%s)" % body


def fields_wedge_minors(fields: Sequence[VectorField]) -> Dict[Tuple[int, ...], Polynomial]:
    """Coefficients of X_1 ^ ... ^ X_k as a polynomial multivector.

    The coefficient on e_{i_1} ^ ... ^ e_{i_k} (indices increasing) is the
    corresponding maximal minor of the k x n component matrix.
    """
    k = len(fields)
    ctx = fields[0].ctx
    n = ctx.arity
    out = {}
    for idx in itertools.combinations(range(n), k):
        minor = _det([[f.components[i] for i in idx] for f in fields])
        if not minor.is_zero:
            out[idx] = minor
    return out


def _det(rows: List[List[Polynomial]]) -> Polynomial:
    k = len(rows)
    ctx = rows[0][0].ctx
    if k == 1:
        return rows[0][0]
    if k == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = Polynomial.zero(ctx)
    for j in range(k):
        entry = rows[0][j]
        if entry.is_zero:
            continue
        sub = [[row[c] for c in range(k) if c != j] for row in rows[1:]]
        term = entry * _det(sub)
        total = total + (term if j % 2 == 0 else -term)
    return total


# ---------------------------------------------------------------------------
# integrability checks


@dataclass
class CheckResult:
    """Outcome of a single identity check.

    status is one of holds/fails/inapplicable/unknown; `residuals` carries
    the exact nonzero obstruction(s) whenever status is "fails".
    """
    name: str
    status: str
    residuals: list = field(default_factory=list)
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"


def frobenius_check(forms: Sequence[DiffForm]) -> List[CheckResult]:
    """Integrability residuals d(w_j) ^ w_1 ^ ... ^ w_q (w_j omitted).

    For a single form the condition degenerates to dw ^ w = 0.  Each
    result carries the full residual form; the system is integrable iff
    every status is "holds".
    """
    if len(forms) < 1:
        raise ValueError("need at least one 1-form")
    if any(f.degree != 1 for f in forms):
        raise ValueError("Frobenius check expects 1-forms")
    results = []
    for j, omega in enumerate(forms):
        d_omega = omega.exterior_derivative()
        if len(forms) == 1:
            residual = d_omega.wedge(omega)
        else:
            others = [f for i, f in enumerate(forms) if i != j]
            residual = d_omega.wedge(wedge_all(others))
        status = "holds" if residual.is_zero else "fails"
        results.append(CheckResult(
            name="frobenius[%d]" % (j + 1),
            status=status,
            residuals=[] if residual.is_zero else [residual],
            detail="d(w_%d) wedge remaining forms" % (j + 1)))
    return results


def involutivity_check(fields: Sequence[VectorField]) -> CheckResult:
    """Wedge criterion for involutivity of span(X_1 .. X_k).

    Decides [X_i, X_j] ^ X_1 ^ ... ^ X_k == 0 for all i < j, i.e. the
    brackets are tangent to the distribution wherever the spanning
    fields are independent.  Vacuously holds for k = 1.
    """
    k = len(fields)
    if k < 1:
        raise ValueError("need at least one vector field")
    if k == 1:
        return CheckResult(name="involutivity", status="holds",
                           detail="single field, vacuous")
    for i, j in itertools.combinations(range(k), 2):
        bracket = fields[i].lie_bracket(fields[j])
        minors = fields_wedge_minors([bracket] + list(fields))
        if minors:
            idx, poly = sorted(minors.items())[0]
            return CheckResult(
                name="involutivity",
                status="fails",
                residuals=[poly],
                detail="[X_%d, X_%d] not tangent; first nonzero wedge minor at %s"
                       % (i + 1, j + 1, list(idx)))
    return CheckResult(name="involutivity", status="holds",
                       detail="all brackets tangent (wedge criterion)")


def first_integral_check(components: Sequence[Polynomial],
                         fields: Sequence[VectorField]):
    """Residual matrix df_k(X_l); zero everywhere iff every component is a
    first integral of every field."""
    matrix = []
    for f in components:
        row = []
        for X in fields:
            row.append(X.apply_to(f))
        matrix.append(row)
    ok = all(r.is_zero for row in matrix for r in row)
    return ok, matrix
