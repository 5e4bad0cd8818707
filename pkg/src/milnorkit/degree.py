"""Local topological degree of gradient maps.

The authoritative route is the Eisenbud-Levine/Khimshiashvili signature
formula: on the finite-dimensional algebra Q = R[x]/(grad f), pick any
linear functional phi that is positive on the residue class of the
Hessian determinant; the symmetric bilinear form (g, h) -> phi(g*h) is
then nondegenerate and its signature equals deg_0(grad f).  The
signature is computed by exact symmetric congruence reduction over the
rationals, so the reported degree is certified, and a second,
independently chosen functional is always run as a cross-check.

Two numerical oracles accompany the exact route: adaptive argument
tracking around a circle (planar maps) and a multi-start damped-Newton
count of signed preimages of a small regular value (any square map).
The report ranks exact > winding > preimage; oracle disagreement is an
alarm, never silently resolved.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .groebner import MilnorNumberResult, milnor_number, normal_form
from .harmonics import PolyMap
from .poly import Polynomial, determinant, grevlex_key

DEFAULT_SEED = 0x5EED


def compile_float_evaluator(polys: Sequence[Polynomial]):
    """Vectorized float evaluator: point -> array of the polys' values.

    Exponents and coefficients are frozen into numpy arrays once, so the
    numerical oracles avoid per-call exact-to-float conversion.
    """
    rows = []
    coeffs = []
    offsets = [0]
    arity = polys[0].ctx.arity
    for p in polys:
        if p.terms:
            for m, c in p.terms.items():
                rows.append(m)
                coeffs.append(float(c))
        else:
            rows.append((0,) * arity)
            coeffs.append(0.0)
        offsets.append(len(rows))
    exps = np.array(rows, dtype=np.int64)
    cs = np.array(coeffs)
    starts = np.array(offsets[:-1])

    def evaluate(point):
        x = np.asarray(point, dtype=float)
        terms = cs * np.prod(np.power(x[None, :], exps), axis=1)
        return np.add.reduceat(terms, starts)

    return evaluate


# ---------------------------------------------------------------------------
# exact signature of a rational symmetric matrix


def signature_symmetric(matrix: Sequence[Sequence[Fraction]]):
    """(signature, positives, negatives, rank) by congruence reduction.

    Pure rational Gaussian pivoting; zero diagonals are repaired by the
    standard row+column addition, so hyperbolic blocks contribute +1/-1
    pairs exactly.
    """
    n = len(matrix)
    A = [[Fraction(x) for x in row] for row in matrix]
    active = list(range(n))
    pos = neg = 0
    while active:
        pivot = next((i for i in active if A[i][i] != 0), None)
        if pivot is None:
            hyper = None
            for ai, i in enumerate(active):
                for j in active[ai + 1:]:
                    if A[i][j] != 0:
                        hyper = (i, j)
                        break
                if hyper:
                    break
            if hyper is None:
                break  # remaining block is zero
            i, j = hyper
            for t in active:
                A[i][t] = A[i][t] + A[j][t]
            for t in active:
                A[t][i] = A[t][i] + A[t][j]
            pivot = i
        d = A[pivot][pivot]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(pivot)
        for i in active:
            f = A[i][pivot] / d
            if f:
                for j in active:
                    A[i][j] = A[i][j] - f * A[pivot][j]
    return pos - neg, pos, neg, pos + neg


# ---------------------------------------------------------------------------
# Eisenbud-Levine


@dataclass
class EisenbudLevineCertificate:
    """Auditable data behind one exact degree computation."""
    quotient_basis: List[tuple]
    hessian_residue: Polynomial
    functional_kind: str
    functional: List[Fraction]          # phi on the basis monomials
    form_matrix: List[List[Fraction]]
    signature: int
    positive: int
    negative: int
    rank: int
    cross_functional: List[Fraction]
    cross_signature: int


@dataclass
class ELDegreeResult:
    """status: ok | undefined | unsupported.

    `undefined` means the Milnor number is infinite (EL does not apply);
    `unsupported` means the global quotient provably differs from the
    local algebra, which would need local standard bases.
    """
    status: str
    degree: Optional[int]
    mu: Optional[int]
    certificate: Optional[EisenbudLevineCertificate]
    note: str
    alarms: List[str] = field(default_factory=list)
    milnor: Optional[MilnorNumberResult] = None


def _apply_functional(phi: List[Fraction], qa, poly: Polynomial) -> Fraction:
    coords = qa.coordinates(poly)
    return sum((a * b for a, b in zip(phi, coords)), Fraction(0))


def el_degree(f: Polynomial, rng_seed: int = DEFAULT_SEED) -> ELDegreeResult:
    """Exact local degree of grad f at the origin via the signature formula."""
    mres = milnor_number(f)
    if mres.mu is None:
        return ELDegreeResult(status="undefined", degree=None, mu=None,
                              certificate=None, milnor=mres,
                              note="degree undefined by the signature formula: "
                                   + mres.support_note)
    if not mres.local_equals_global:
        return ELDegreeResult(status="unsupported", degree=None, mu=mres.mu,
                              certificate=None, milnor=mres,
                              note=mres.support_note)
    qa = mres.quotient
    if qa.dim == 0:
        return ELDegreeResult(status="ok", degree=0, mu=0, certificate=None,
                              milnor=mres,
                              note="gradient ideal is the unit ideal; the origin "
                                   "is a regular point and the local degree is 0")
    n = f.ctx.arity
    hessian = [[f.partial_derivative(i).partial_derivative(j) for j in range(n)]
               for i in range(n)]
    residue = normal_form(determinant(hessian), mres.gb)
    alarms = []
    if residue.is_zero:
        alarms.append("Hessian determinant reduces to zero in the quotient; "
                      "the signature formula hypothesis fails")
        return ELDegreeResult(status="undefined", degree=None, mu=mres.mu,
                              certificate=None, milnor=mres, alarms=alarms,
                              note="degenerate Hessian residue")

    index = {m: i for i, m in enumerate(qa.basis)}

    # default functional: dual of the highest-degree monomial in the
    # support of the Hessian residue, sign-normalized so phi(residue) > 0
    pivot = max(residue.terms, key=grevlex_key)
    phi = [Fraction(0)] * qa.dim
    phi[index[pivot]] = Fraction(1) if residue.terms[pivot] > 0 else Fraction(-1)

    # independent cross-check functional: random sparse rational values,
    # deterministic seed, re-normalized to be positive on the residue
    rng = random.Random(rng_seed)
    phi2 = None
    for _ in range(64):
        cand = [Fraction(0)] * qa.dim
        for i in range(qa.dim):
            if rng.random() < 0.5:
                num = rng.randint(-9, 9)
                if num:
                    cand[i] = Fraction(num)
        val = sum((c * r for c, r in zip(cand, qa.coordinates(residue))), Fraction(0))
        if val != 0:
            phi2 = cand if val > 0 else [-c for c in cand]
            break
    if phi2 is None:
        phi2 = phi
        alarms.append("could not draw an independent functional; cross-check "
                      "degenerated to the default one")

    def build_matrix(functional):
        m = [[Fraction(0)] * qa.dim for _ in range(qa.dim)]
        for i, a in enumerate(qa.basis):
            for j in range(i, qa.dim):
                val = _apply_functional(functional, qa, qa.multiply(a, qa.basis[j]))
                m[i][j] = val
                m[j][i] = val
        return m

    form = build_matrix(phi)
    sig, posn, negn, rank = signature_symmetric(form)
    if rank != qa.dim:
        alarms.append("bilinear form is degenerate (rank %d of %d); the "
                      "signature formula hypothesis fails" % (rank, qa.dim))
    form2 = build_matrix(phi2)
    sig2 = signature_symmetric(form2)[0]
    if sig2 != sig:
        alarms.append("functional choice changed the signature (%d vs %d); "
                      "this contradicts the signature formula" % (sig, sig2))
    cert = EisenbudLevineCertificate(
        quotient_basis=list(qa.basis),
        hessian_residue=residue,
        functional_kind="dual of highest residue monomial",
        functional=phi,
        form_matrix=form,
        signature=sig,
        positive=posn,
        negative=negn,
        rank=rank,
        cross_functional=phi2,
        cross_signature=sig2,
    )
    return ELDegreeResult(status="ok", degree=sig, mu=mres.mu, certificate=cert,
                          milnor=mres, alarms=alarms,
                          note="signature of the exact bilinear form on a "
                               "%d-dimensional quotient" % qa.dim)


def gradient_map(f: Polynomial) -> PolyMap:
    return PolyMap(f.gradient())


# ---------------------------------------------------------------------------
# numerical oracles


@dataclass
class WindingResult:
    status: str                  # ok | inconclusive
    degree: Optional[int]
    samples: int
    radius: float
    note: str = ""


def winding_degree_2d(G: PolyMap, radius: Fraction = Fraction(1)) -> WindingResult:
    """Winding number of t -> G(r cos t, r sin t) by argument tracking.

    The sampling grid is doubled until every angular increment is below
    pi/2; a near-zero of G on the circle triggers a small deterministic
    radius perturbation.  No randomness is involved.
    """
    if G.p != 2 or G.arity != 2:
        raise ValueError("winding oracle needs a planar map (p = 2, arity = 2)")
    g1, g2 = G.components
    r = float(radius)
    for _attempt in range(6):
        samples = 64
        while samples <= (1 << 18):
            angles = [2.0 * math.pi * k / samples for k in range(samples)]
            values = [(g1.evaluate_float((r * math.cos(t), r * math.sin(t))),
                       g2.evaluate_float((r * math.cos(t), r * math.sin(t))))
                      for t in angles]
            norms = [math.hypot(a, b) for a, b in values]
            scale = max(norms)
            if scale == 0.0 or min(norms) < 1e-9 * scale:
                break  # zero (or near-zero) on the circle: perturb radius
            args = [math.atan2(b, a) for a, b in values]
            total = 0.0
            fine = True
            for k in range(samples):
                d = args[(k + 1) % samples] - args[k]
                while d > math.pi:
                    d -= 2.0 * math.pi
                while d <= -math.pi:
                    d += 2.0 * math.pi
                if abs(d) >= math.pi / 2:
                    fine = False
                    break
                total += d
            if fine:
                winding = total / (2.0 * math.pi)
                nearest = round(winding)
                if abs(winding - nearest) < 1e-2:
                    return WindingResult(status="ok", degree=int(nearest),
                                         samples=samples, radius=r)
                return WindingResult(status="inconclusive", degree=None,
                                     samples=samples, radius=r,
                                     note="winding %.6f not close to an integer" % winding)
            samples *= 2
        r *= 1.0078125  # deterministic perturbation: 1 + 1/128
    return WindingResult(status="inconclusive", degree=None, samples=0, radius=r,
                         note="no zero-free circle found after perturbation retries")


@dataclass
class PreimageResult:
    estimate: Optional[int]
    solutions_found: int
    note: str


def _halton(index: int, base: int) -> float:
    result = 0.0
    f = 1.0
    i = index
    while i > 0:
        f /= base
        result += f * (i % base)
        i //= base
    return result


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53]


def preimage_degree(G: PolyMap, target: Sequence[Fraction], seeds: int = 200,
                    rng_seed: int = DEFAULT_SEED) -> PreimageResult:
    """Signed count of solutions of G(x) = target found by damped Newton.

    Seeds come from a Halton set inside a ball (offset by rng_seed), so a
    given configuration is fully deterministic.  Root finding can miss
    solutions, so the estimate is lower-bound evidence, never authority.
    """
    n = G.arity
    if G.p != n:
        raise ValueError("preimage oracle needs a square map")
    if len(target) != n:
        raise ValueError("target length mismatch")
    tgt = np.array([float(t) for t in target])
    comps = G.components
    jac = [[c.partial_derivative(j) for j in range(n)] for c in comps]
    eval_map = compile_float_evaluator(comps)
    eval_jac_flat = compile_float_evaluator([e for row in jac for e in row])

    def eval_jac(pt):
        return eval_jac_flat(pt).reshape(n, n)

    offset = rng_seed % 997
    ball = 1.5
    solutions = []
    tol = 1e-11 * max(1.0, float(np.linalg.norm(tgt)))
    for s in range(seeds):
        pt = np.array([2.0 * _halton(offset + s + 1, _PRIMES[d % len(_PRIMES)]) - 1.0
                       for d in range(n)]) * ball
        converged = False
        for _ in range(120):
            res = eval_map(pt) - tgt
            if np.linalg.norm(res) < tol:
                converged = True
                break
            J = eval_jac(pt)
            try:
                step = np.linalg.solve(J, res)
            except np.linalg.LinAlgError:
                break
            norm = np.linalg.norm(step)
            if not np.isfinite(norm):
                break
            if norm > 1.0:
                step = step / norm  # damping: cap the step length
            pt = pt - step
        if not converged:
            continue
        if any(np.linalg.norm(pt - q) < 1e-6 for q, _ in solutions):
            continue
        det = float(np.linalg.det(eval_jac(pt)))
        if det == 0.0:
            continue  # non-regular solution: target not generic enough here
        solutions.append((pt, 1 if det > 0 else -1))
    if not solutions:
        return PreimageResult(estimate=None, solutions_found=0,
                              note="no evidence: Newton found no preimages")
    total = sum(sign for _, sign in solutions)
    return PreimageResult(estimate=total, solutions_found=len(solutions),
                          note="lower-bound evidence from %d signed preimages"
                               % len(solutions))


def generic_target(n: int, magnitude: Fraction) -> List[Fraction]:
    """Deterministic 'generic' small rational target for the preimage oracle."""
    out = []
    for i in range(n):
        num = 3 + 2 * i
        den = 7 + 3 * i
        val = Fraction(num, den) * magnitude
        out.append(val if i % 2 == 0 else -val)
    return out
