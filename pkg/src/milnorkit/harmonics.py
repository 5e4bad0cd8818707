"""Harmonic first-integral-map conditions.

Decides, as exact polynomial identities, the two defining conditions of
a harmonic first integral map (all component Laplacians vanish; the
gradient Gram matrix equals lambda^2(x) times the identity), plus
functional independence, harmonicity of 1-forms, the sufficient
horizontal-homothety test, and the singular-locus ideal.

The lambda^2 extracted here is the common diagonal Gram polynomial: for
polynomial maps the diagonal entries are polynomials and their equality
is decidable exactly, so no germ-level reasoning is needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from .forms import CheckResult, DiffForm, differential, wedge_all
from .poly import ContextMismatch, Polynomial, VariableContext, poly_dot


class PolyMap:
    """An ordered tuple of polynomial components over one shared context."""

    __slots__ = ("ctx", "components")

    def __init__(self, components: Sequence[Polynomial]):
        components = list(components)
        if not components:
            raise ValueError("a map needs at least one component")
        ctx = components[0].ctx
        for f in components[1:]:
            if not ctx.compatible(f.ctx):
                raise ContextMismatch("map components live over different arities")
        self.ctx = ctx
        self.components = components

    @property
    def p(self) -> int:
        return len(self.components)

    @property
    def arity(self) -> int:
        return self.ctx.arity

    def truncation(self, j: int) -> "PolyMap":
        """The map (f_1, ..., f_j)."""
        if not 1 <= j <= self.p:
            raise ValueError("truncation length %d out of range" % j)
        return PolyMap(self.components[:j])

    def jacobian(self) -> List[List[Polynomial]]:
        return [f.gradient() for f in self.components]

    def __repr__(self):
        return "PolyMap(%s)" % "; ".join(f.to_string() for f in self.components)


def laplacian(f: Polynomial) -> Polynomial:
    """Sum of the second pure partials, in canonical form."""
    total = Polynomial.zero(f.ctx)
    for i in range(f.ctx.arity):
        total = total + f.partial_derivative(i).partial_derivative(i)
    return total


@dataclass
class GramResult:
    """Exact Gram matrix of the component gradients.

    hwc is True iff all off-diagonal entries vanish and the diagonal
    entries are one identical polynomial, which is then lambda_sq (the
    squared dilation of a horizontally weakly conformal map).
    """
    gram: List[List[Polynomial]]
    hwc: bool
    lambda_sq: Optional[Polynomial]
    offending: list = field(default_factory=list)


def gram(F: PolyMap) -> GramResult:
    grads = [f.gradient() for f in F.components]
    p = F.p
    matrix = [[None] * p for _ in range(p)]
    for i in range(p):
        for j in range(i, p):
            entry = poly_dot(grads[i], grads[j])
            matrix[i][j] = entry
            matrix[j][i] = entry
    offending = []
    for i in range(p):
        for j in range(i + 1, p):
            if not matrix[i][j].is_zero:
                offending.append(("offdiag", i + 1, j + 1, matrix[i][j]))
    diag = matrix[0][0]
    for i in range(1, p):
        if matrix[i][i] != diag:
            offending.append(("diag", 1, i + 1, matrix[i][i] - diag))
    hwc = not offending
    return GramResult(gram=matrix, hwc=hwc, lambda_sq=diag if hwc else None,
                      offending=offending)


def functional_independence(F: PolyMap) -> CheckResult:
    """df_1 ^ ... ^ df_p != 0 as a polynomial p-form."""
    if F.p > F.arity:
        return CheckResult(name="independence", status="fails",
                           detail="more components than variables forces dependence")
    w = wedge_all([differential(f) for f in F.components])
    if w.is_zero:
        return CheckResult(name="independence", status="fails",
                           detail="the wedge of the differentials vanishes identically")
    return CheckResult(name="independence", status="holds",
                       detail="nonzero %d-form minor present" % F.p)


def one_form_harmonic(omega: DiffForm) -> dict:
    """Closed plus co-closed test for a Euclidean 1-form.

    Returns a dict with the closedness residual (d omega) and the
    divergence residual (the Euclidean codifferential up to sign).
    """
    if omega.degree != 1:
        raise ValueError("harmonicity test applies to 1-forms")
    d_omega = omega.exterior_derivative()
    ctx = omega.ctx
    divergence = Polynomial.zero(ctx)
    for (i,), coeff in omega.coeffs.items():
        divergence = divergence + coeff.partial_derivative(i)
    status = "holds" if (d_omega.is_zero and divergence.is_zero) else "fails"
    return {
        "status": status,
        "closed": d_omega.is_zero,
        "coclosed": divergence.is_zero,
        "d_omega": d_omega,
        "divergence": divergence,
    }


@dataclass
class HarmonicVerdict:
    """Full result of the harmonic-first-integral-map decision.

    `consistency_alarm` fires when the map is horizontally weakly
    conformal with p >= 2 yet some Laplacian is nonzero; for polynomial
    maps that combination is impossible, so a hit means an input outside
    the encoded theorem's hypotheses or a bug, never a silent pass.
    """
    is_harmonic_first_integral_map: bool
    laplacians: List[Polynomial]
    laplacian_ok: bool
    gram: GramResult
    independence: CheckResult
    harmonicity_implied_by_hwc: bool
    consistency_alarm: Optional[str]


def is_harmonic_first_integral_map(F: PolyMap) -> HarmonicVerdict:
    laps = [laplacian(f) for f in F.components]
    laplacian_ok = all(l.is_zero for l in laps)
    g = gram(F)
    indep = functional_independence(F)
    implied = bool(g.hwc and F.p >= 2)
    alarm = None
    if implied and not laplacian_ok:
        bad = [i + 1 for i, l in enumerate(laps) if not l.is_zero]
        alarm = ("horizontally weakly conformal polynomial map with nonzero "
                 "Laplacian in component(s) %s; cross-check of the encoded "
                 "implication failed" % bad)
    verdict = laplacian_ok and g.hwc and indep.holds
    return HarmonicVerdict(
        is_harmonic_first_integral_map=verdict,
        laplacians=laps,
        laplacian_ok=laplacian_ok,
        gram=g,
        independence=indep,
        harmonicity_implied_by_hwc=implied,
        consistency_alarm=alarm,
    )


def horizontally_homothetic_sufficient(F: PolyMap, g: Optional[GramResult] = None) -> CheckResult:
    """Sufficient syntactic test: grad(lambda^2) vertical everywhere.

    Checks <grad lambda^2, grad f_a> == 0 for all components.  Passing
    certifies horizontal homothety of the ambient map; failing proves
    nothing, so the status is then "unknown" rather than "fails".
    """
    g = g or gram(F)
    if not g.hwc:
        return CheckResult(name="homothety_sufficient", status="inapplicable",
                           detail="map is not horizontally weakly conformal")
    lam_grad = g.lambda_sq.gradient()
    residuals = []
    for f in F.components:
        r = poly_dot(lam_grad, f.gradient())
        if not r.is_zero:
            residuals.append(r)
    if not residuals:
        return CheckResult(name="homothety_sufficient", status="holds",
                           detail="grad(lambda^2) orthogonal to every horizontal gradient")
    return CheckResult(name="homothety_sufficient", status="unknown",
                       residuals=residuals,
                       detail="sufficient test inconclusive; dilation gradient "
                              "has a horizontal part")


@dataclass
class SingularIdeal:
    """Generators of the rank-deficiency locus of the Jacobian.

    `minors` always defines Sing F.  For horizontally weakly conformal
    maps the singular locus equals the common zero set of all first
    partials, so the much smaller `partials` list is also emitted and is
    the preferred input for dimension computations.
    """
    minors: List[Polynomial]
    partials: Optional[List[Polynomial]]


def singular_ideal(F: PolyMap, g: Optional[GramResult] = None) -> SingularIdeal:
    jac = F.jacobian()
    p, n = F.p, F.arity
    if p > n:
        # more components than variables: the map is singular everywhere
        return SingularIdeal(minors=[Polynomial.zero(F.ctx)], partials=None)
    minors = []
    for cols in itertools.combinations(range(n), p):
        m = _minor(jac, list(range(p)), list(cols))
        if not m.is_zero:
            minors.append(m)
    if not minors:
        minors = [Polynomial.zero(F.ctx)]
    g = g or gram(F)
    partials = None
    if g.hwc:
        partials = [d for row in jac for d in row if not d.is_zero]
        if not partials:
            partials = [Polynomial.zero(F.ctx)]
    return SingularIdeal(minors=minors, partials=partials)


def _minor(jac, rows, cols) -> Polynomial:
    k = len(rows)
    if k == 1:
        return jac[rows[0]][cols[0]]
    total = Polynomial.zero(jac[0][0].ctx)
    for pos, c in enumerate(cols):
        entry = jac[rows[0]][c]
        if entry.is_zero:
            continue
        sub = _minor(jac, rows[1:], cols[:pos] + cols[pos + 1:])
        term = entry * sub
        total = total + (term if pos % 2 == 0 else -term)
    return total


def milnor_set_ideal(F: PolyMap) -> List[Polynomial]:
    """Generators of the Milnor set M(F) = Sing(F, rho), rho = |x|^2.

    These are the (p+1) x (p+1) minors of the Jacobian of (F, rho).
    """
    ctx = F.ctx
    n = ctx.arity
    rho_grad = [Polynomial.variable(ctx, i) * 2 for i in range(n)]
    jac = F.jacobian() + [rho_grad]
    k = F.p + 1
    if k > n:
        return [Polynomial.zero(ctx)]
    minors = []
    for cols in itertools.combinations(range(n), k):
        m = _minor(jac, list(range(k)), list(cols))
        if not m.is_zero:
            minors.append(m)
    return minors if minors else [Polynomial.zero(ctx)]
