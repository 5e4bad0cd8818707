"""The theorem engine.

Builds a fact base of verified statements about one polynomial map
(harmonicity, homogeneity, singular-locus data, zero-set evidence,
local degrees, user assertions), then applies the classification
theorems in a fixed order: fibration existence, Milnor-set condition,
Euler characteristics, link Euler characteristics, ball inclusions,
Hopf-fiber and quadratic-pencil classifications, fiber minimality.

Every fact carries a provenance (the operation that produced it, or
"user assertion"); a theorem emits its conclusion only when every
hypothesis is verified or user-asserted, and user-asserted hypotheses
are marked in the output.  Encodings are cross-checked where the
mathematics allows it, and any contradiction raises a loud
inconsistency alarm instead of being silently resolved.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np

from .degree import DEFAULT_SEED, ELDegreeResult, el_degree
from .groebner import buchberger, ideal_dimension, normal_form, quotient_algebra, \
    NotZeroDimensional, origin_only_zero
from .harmonics import (HarmonicVerdict, PolyMap, gram, horizontally_homothetic_sufficient,
                        is_harmonic_first_integral_map, milnor_set_ideal, singular_ideal)
from .poly import Polynomial
from .realzeros import ZeroWitness, find_nonzero_real_zero

KNOWN_ASSERTIONS = frozenset({
    "horizontally_homothetic",
    "link_connected",
    "link_nonempty",
    "fiber_simply_connected",
})

HOPF_TRIPLES = ((3, 3, 2), (7, 5, 2), (15, 9, 2))


@dataclass
class Fact:
    name: str
    status: str                  # holds | fails | unknown | inapplicable
    value: object = None
    provenance: str = ""

    def as_dict(self):
        value = self.value
        if isinstance(value, Fraction):
            value = str(value)
        return {"status": self.status, "value": value, "provenance": self.provenance}


@dataclass
class FactBase:
    F: PolyMap
    ambient: int
    p: int
    verdict: HarmonicVerdict
    harmonic: Fact
    homogeneity: Fact            # value: per-component degrees
    common_degree: Optional[int]
    isolated: Fact               # Sing F = {0}
    sing_dim: Optional[int]      # complex Krull dimension of the singular ideal
    sing_basis: str
    sing_witness: Optional[ZeroWitness]
    vf_origin: Fact              # V_F = {0}
    vf_witness: Optional[ZeroWitness]
    degrees: Dict[int, ELDegreeResult]
    degrees_fact: Fact           # common local degree across components
    assertions: frozenset
    alarms: List[str] = field(default_factory=list)

    def cleared(self, fact_name: str) -> "FactBase":
        """Copy with one fact downgraded to unknown (for ablation tests)."""
        unknown = Fact(name=fact_name, status="unknown", value=None,
                       provenance="ablated")
        kwargs = {}
        if fact_name in ("harmonic", "homogeneity", "isolated", "vf_origin",
                         "degrees_fact"):
            kwargs[fact_name] = unknown
            if fact_name == "homogeneity":
                kwargs["common_degree"] = None
            if fact_name == "degrees_fact":
                kwargs["degrees"] = {}
        else:
            raise KeyError("no ablatable fact %r" % fact_name)
        return dataclasses.replace(self, **kwargs)


def build_facts(F: PolyMap, assertions=(), rng_seed: int = DEFAULT_SEED,
                compute_degrees: bool = True) -> FactBase:
    """Run the verification operations once and aggregate their results."""
    alarms: List[str] = []
    assertions = frozenset(assertions)
    unknown_flags = assertions - KNOWN_ASSERTIONS
    if unknown_flags:
        raise ValueError("unknown assertion flags: %s" % sorted(unknown_flags))

    verdict = is_harmonic_first_integral_map(F)
    if verdict.consistency_alarm:
        alarms.append(verdict.consistency_alarm)
    harmonic = Fact(
        name="harmonic_first_integral_map",
        status="holds" if verdict.is_harmonic_first_integral_map else "fails",
        value=verdict.is_harmonic_first_integral_map,
        provenance="Laplacians, gradient Gram matrix and independence wedge, all exact")

    degs = [f.homogeneous_degree() for f in F.components]
    plain = [d for d in degs if isinstance(d, int)]
    common = plain[0] if (len(plain) == F.p and len(set(plain)) == 1) else None
    homogeneity = Fact(
        name="homogeneity",
        status="holds" if common is not None else "fails",
        value=degs,
        provenance="per-term total degrees")

    si = singular_ideal(F, verdict.gram)
    if si.partials is not None:
        sing_gens = si.partials
        sing_basis = "first partials (equivalent to the minor ideal for " \
                     "horizontally weakly conformal maps)"
    else:
        sing_gens = si.minors
        sing_basis = "jacobian minors"
    sing_witness = None
    if all(g.is_zero for g in sing_gens):
        isolated = Fact(name="isolated_singularity", status="fails", value=False,
                        provenance="jacobian is identically singular")
        sing_dim = F.arity
    else:
        gb = buchberger(sing_gens)
        sing_dim = ideal_dimension(gb)
        if sing_dim == 0:
            origin_only = origin_only_zero(quotient_algebra(gb))
            if origin_only:
                isolated = Fact(name="isolated_singularity", status="holds", value=True,
                                provenance="singular ideal (%s) is zero-dimensional with "
                                           "the origin as its only complex zero" % sing_basis)
            else:
                isolated = Fact(name="isolated_singularity", status="unknown", value=None,
                                provenance="zero-dimensional singular ideal with complex "
                                           "zeros away from the origin; realness undecided")
        else:
            sing_witness = find_nonzero_real_zero(sing_gens)
            if sing_witness is not None:
                isolated = Fact(name="isolated_singularity", status="fails", value=False,
                                provenance="nonzero real singular point exhibited; "
                                           + sing_witness.describe(F.ctx.names))
            else:
                isolated = Fact(name="isolated_singularity", status="unknown", value=None,
                                provenance="singular ideal has complex dimension %d; no "
                                           "nonzero real singular point found at search "
                                           "depth" % sing_dim)

    # V_F = {0}: complex dimension evidence plus real-point search
    comp_gb = buchberger(F.components)
    comp_dim = ideal_dimension(comp_gb)
    vf_witness = find_nonzero_real_zero(F.components)
    if vf_witness is not None:
        vf = Fact(name="vf_only_origin", status="fails", value=False,
                  provenance="nonzero real common zero exhibited; "
                             + vf_witness.describe(F.ctx.names))
    elif comp_dim == 0:
        try:
            origin_only = origin_only_zero(quotient_algebra(comp_gb))
        except NotZeroDimensional:
            origin_only = False
        if origin_only:
            vf = Fact(name="vf_only_origin", status="holds", value=True,
                      provenance="component ideal is zero-dimensional with the origin "
                                 "as its only complex zero")
        else:
            vf = Fact(name="vf_only_origin", status="holds", value=True,
                      provenance="zero-dimensional complex variety and no nonzero real "
                                 "zero found on the search grid (evidence, not proof)")
    else:
        vf = Fact(name="vf_only_origin", status="unknown", value=None,
                  provenance="complex variety has dimension %d; no nonzero real zero "
                             "found at search depth" % comp_dim)

    # local degrees, component by component, when the singularity is isolated
    degrees: Dict[int, ELDegreeResult] = {}
    degrees_fact = Fact(name="local_degrees", status="unknown", value=None,
                        provenance="not computed")
    if compute_degrees and isolated.status == "holds":
        for k, f in enumerate(F.components, start=1):
            degrees[k] = el_degree(f, rng_seed=rng_seed)
            alarms.extend("component %d: %s" % (k, a) for a in degrees[k].alarms)
        values = {k: r.degree for k, r in degrees.items() if r.status == "ok"}
        if len(values) == F.p and len(set(values.values())) == 1:
            degrees_fact = Fact(name="local_degrees", status="holds",
                                value=values[1],
                                provenance="exact signature formula, equal across all "
                                           "components")
        elif len(values) == F.p:
            degrees_fact = Fact(name="local_degrees", status="fails", value=dict(values),
                                provenance="components have different local degrees")
            if harmonic.status == "holds" and F.arity % 2 == 0:
                alarms.append(
                    "local degrees %s differ across components of a verified harmonic "
                    "first integral map with isolated singularity; this contradicts the "
                    "cross-component equality and is never silently resolved" % values)
        else:
            degrees_fact = Fact(name="local_degrees", status="unknown",
                                value={k: v for k, v in values.items()},
                                provenance="some components have no defined degree")
        if harmonic.status == "holds" and F.arity % 2 == 1:
            bad = {k: v for k, v in values.items() if v != 0}
            if bad:
                alarms.append(
                    "odd ambient dimension with verified harmonic map, yet nonzero "
                    "component degrees %s; contradicts the odd-dimension vanishing" % bad)

    return FactBase(
        F=F, ambient=F.arity, p=F.p, verdict=verdict, harmonic=harmonic,
        homogeneity=homogeneity, common_degree=common,
        isolated=isolated, sing_dim=sing_dim, sing_basis=sing_basis,
        sing_witness=sing_witness,
        vf_origin=vf, vf_witness=vf_witness,
        degrees=degrees, degrees_fact=degrees_fact,
        assertions=assertions, alarms=alarms)


# ---------------------------------------------------------------------------
# theorem applications


@dataclass
class TheoremApplication:
    theorem: str
    title: str
    hypotheses: List[dict]
    applicability: str           # applies | inapplicable | undetermined | fails: ...
    conclusions: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def as_dict(self):
        return {
            "theorem": self.theorem,
            "title": self.title,
            "hypotheses": self.hypotheses,
            "applicability": self.applicability,
            "conclusions": self.conclusions,
            "notes": self.notes,
        }


def _hyp(name: str, fact_or_status, provenance: str = "") -> dict:
    if isinstance(fact_or_status, Fact):
        return {"name": name, "status": fact_or_status.status,
                "provenance": fact_or_status.provenance}
    return {"name": name, "status": fact_or_status, "provenance": provenance}


def _gate(hypotheses: List[dict]) -> Optional[str]:
    """None when every hypothesis holds; otherwise the blocking status."""
    for h in hypotheses:
        if h["status"] == "fails":
            return "inapplicable: %s fails" % h["name"]
    for h in hypotheses:
        if h["status"] not in ("holds", "user-asserted"):
            return "undetermined"
    return None


def fibration_existence(facts: FactBase) -> TheoremApplication:
    """Milnor tube and sphere fibrations for harmonic first integral maps."""
    hyps = [_hyp("harmonic_first_integral_map", facts.harmonic)]
    if facts.p < 2:
        return TheoremApplication(
            theorem="milnor_fibrations",
            title="Milnor tube and sphere fibrations",
            hypotheses=hyps, applicability="inapplicable",
            notes=["single first integral: the critical value is isolated and the "
                   "accumulation condition holds; tube/sphere pairing needs p >= 2"])
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(
            theorem="milnor_fibrations", title="Milnor tube and sphere fibrations",
            hypotheses=hyps, applicability=blocked)
    n = facts.ambient - 1
    conclusions = [
        {"statement": "the map admits a Milnor tube fibration onto S^%d" % (facts.p - 1),
         "target_sphere_dim": facts.p - 1},
        {"statement": "the map admits a Milnor sphere fibration S^%d minus the link -> S^%d"
                      % (n, facts.p - 1),
         "source_sphere_dim": n, "target_sphere_dim": facts.p - 1},
        {"statement": "the tube and sphere fibrations are equivalent; their fibers are "
                      "diffeomorphic"},
    ]
    notes = []
    trunc = []
    for j in range(2, facts.p):
        Fj = facts.F.truncation(j)
        gj = gram(Fj)
        if not gj.hwc or gj.lambda_sq != facts.verdict.gram.lambda_sq:
            facts.alarms.append(
                "truncation to %d components lost horizontal weak conformality; "
                "contradicts the truncation-stability cross-check" % j)
            continue
        trunc.append(j)
    if trunc:
        conclusions.append({
            "statement": "every truncation (f_1..f_j), j in %s, is again a harmonic "
                         "first integral map and admits equivalent tube and sphere "
                         "fibrations with the same squared dilation" % trunc,
            "truncations": trunc})
        notes.append("truncation conformality re-verified exactly, not assumed")
    return TheoremApplication(
        theorem="milnor_fibrations", title="Milnor tube and sphere fibrations",
        hypotheses=hyps, applicability="applies", conclusions=conclusions, notes=notes)


def euler_characteristics(facts: FactBase) -> TheoremApplication:
    """chi of the deepest fiber intersection, plus the product/truncation laws."""
    hyps = [_hyp("harmonic_first_integral_map", facts.harmonic)]
    blocked = _gate(hyps)
    title = "Euler characteristics of the fiber intersections"
    if blocked:
        return TheoremApplication(theorem="fiber_euler_characteristic", title=title,
                                  hypotheses=hyps, applicability=blocked)
    conclusions = []
    notes = []
    chi = None
    even = facts.ambient % 2 == 0
    iso = facts.isolated
    if iso.status == "holds":
        if even:
            if facts.degrees_fact.status == "holds":
                deg = facts.degrees_fact.value
                chi = 1 - deg
                conclusions.append({
                    "statement": "even ambient dimension: chi(M_p) = 1 - deg_0(grad f_1) "
                                 "= 1 - (%d) = %d" % (deg, chi),
                    "chi": chi, "degree": deg})
                conclusions.append({
                    "statement": "all component gradient degrees are equal (= %d)" % deg,
                    "degrees": {str(k): r.degree for k, r in facts.degrees.items()}})
            else:
                conclusions.append({
                    "statement": "even ambient dimension: chi(M_p) = 1 - deg_0(grad f_1) "
                                 "with the degree undetermined",
                    "chi": None})
                notes.append("local degree unavailable: %s" % facts.degrees_fact.provenance)
        else:
            chi = 1
            conclusions.append({
                "statement": "odd ambient dimension: chi(M_p) = 1 and every component "
                             "gradient degree vanishes",
                "chi": 1})
    else:
        notes.append("value of chi(M_p) requires an isolated singularity, which is "
                     "%s here (%s)" % (iso.status, iso.provenance))
    # product structure and chi equalities only need an isolated critical value
    conclusions.append({
        "statement": "M_j is homeomorphic to M_p x B^(p-j) for every j = 1..%d" % facts.p,
        "chi": chi})
    conclusions.append({
        "statement": "chi(M_j) = chi(M_p) for every j; in particular every integral "
                     "manifold N_j has chi(N_j) = chi(M_p)"
                     + ("" if chi is None else " = %d" % chi)})
    conclusions.append({
        "statement": "both Milnor fibers of each component (over +delta and -delta) "
                     "have the same Euler characteristic"})
    return TheoremApplication(theorem="fiber_euler_characteristic", title=title,
                              hypotheses=hyps, applicability="applies",
                              conclusions=conclusions, notes=notes)


def link_euler(facts: FactBase, chi: Optional[int]) -> TheoremApplication:
    """chi of the links of the truncated zero sets, odd j only."""
    title = "Euler characteristics of the links"
    hyps = [_hyp("harmonic_first_integral_map", facts.harmonic),
            _hyp("p >= 2", "holds" if facts.p >= 2 else "fails", "component count"),
            _hyp("chi(M_p) known", "holds" if chi is not None else "undetermined",
                 "from the fiber Euler characteristic step")]
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(theorem="link_euler_characteristic", title=title,
                                  hypotheses=hyps, applicability=blocked)
    even = facts.ambient % 2 == 0
    conclusions = []
    for j in range(1, facts.p + 1):
        if j % 2 == 0:
            conclusions.append({"j": j, "statement": "j = %d is even: inapplicable" % j,
                                "chi_link": None})
            continue
        value = 2 * chi if even else 2 - 2 * chi
        conclusions.append({
            "j": j,
            "statement": "chi(V_(f_1..f_%d) intersected with the small sphere) = %s"
                         % (j, value),
            "chi_link": value})
    return TheoremApplication(theorem="link_euler_characteristic", title=title,
                              hypotheses=hyps, applicability="applies",
                              conclusions=conclusions)


def ball_inclusion(facts: FactBase) -> TheoremApplication:
    """Seven arithmetic/topological conditions implying the ball inclusion."""
    title = "Ball inclusion for the level sets of the solutions"
    m = facts.ambient               # n + 1
    n = m - 1
    p = facts.p
    hyps = [_hyp("harmonic_first_integral_map", facts.harmonic),
            _hyp("isolated_singularity", facts.isolated)]
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(theorem="ball_inclusion", title=title,
                                  hypotheses=hyps, applicability=blocked)

    deg = facts.degrees_fact.value if facts.degrees_fact.status == "holds" else None
    deg_known = facts.degrees_fact.status == "holds"

    def flag(name):
        if name in facts.assertions:
            return "user-asserted"
        return "undetermined"

    conditions = []

    def add(number, desc, status, used):
        conditions.append({"condition": number, "description": desc,
                           "status": status, "using": used})

    if (m, p) == (4, 2):
        if deg_known:
            add(1, "(n+1, p) = (4, 2) and deg_0(grad f_1) = 0",
                "holds" if deg == 0 else "fails", "exact degree %s" % deg)
        else:
            add(1, "(n+1, p) = (4, 2) and deg_0(grad f_1) = 0", "undetermined",
                "degree unavailable")
    else:
        add(1, "(n+1, p) = (4, 2) and deg_0(grad f_1) = 0", "fails", "shape mismatch")
    if (m, p) == (5, 2):
        add(2, "(n+1, p) = (5, 2) and M_p simply connected",
            flag("fiber_simply_connected"), "user assertion flag")
    else:
        add(2, "(n+1, p) = (5, 2) and M_p simply connected", "fails", "shape mismatch")
    if (m, p) == (6, 3):
        if deg_known and deg == 0:
            add(3, "(n+1, p) = (6, 3) and (link connected or degree 0)", "holds",
                "exact degree 0")
        else:
            add(3, "(n+1, p) = (6, 3) and (link connected or degree 0)",
                flag("link_connected"),
                "user assertion flag / degree %s" % (deg if deg_known else "unavailable"))
    else:
        add(3, "(n+1, p) = (6, 3) and (link connected or degree 0)", "fails",
            "shape mismatch")
    if (m, p) == (8, 5):
        if deg_known and deg == 0:
            add(4, "(n+1, p) = (8, 5) and (link nonempty or degree 0)", "holds",
                "exact degree 0")
        else:
            add(4, "(n+1, p) = (8, 5) and (link nonempty or degree 0)",
                flag("link_nonempty"), "user assertion flag")
    else:
        add(4, "(n+1, p) = (8, 5) and (link nonempty or degree 0)", "fails",
            "shape mismatch")
    add(5, "p = n and (n+1, p) != (4, 3)",
        "holds" if (p == n and (m, p) != (4, 3)) else "fails", "arithmetic")
    add(6, "n - p = 1 and (n+1, p) != (4, 2)",
        "holds" if (n - p == 1 and (m, p) != (4, 2)) else "fails", "arithmetic")
    add(7, "n - p + 1 = 3 and (n+1, p) not in {(5,2), (6,3), (8,5)}",
        "holds" if (n - p + 1 == 3 and (m, p) not in ((5, 2), (6, 3), (8, 5)))
        else "fails", "arithmetic")

    satisfied = [c for c in conditions if c["status"] in ("holds", "user-asserted")]
    undetermined = [c for c in conditions if c["status"] == "undetermined"]
    notes = []
    if deg_known and deg != 0 and (m, p) in ((4, 2), (6, 3), (8, 5)):
        notes.append("computed deg_0(grad f_1) = %d != 0 is consistent with the "
                     "absence of the degree-based inclusion" % deg)
    if satisfied:
        first = satisfied[0]
        conclusion = [{
            "statement": "the level sets of the solutions are included in the ball "
                         "product B^%d x B^(%d - j) for any j = 1..%d (by condition %d)"
                         % (n - p + 1, p, p, first["condition"]),
            "condition": first["condition"],
            "user_asserted": first["status"] == "user-asserted",
        }]
        return TheoremApplication(theorem="ball_inclusion", title=title,
                                  hypotheses=hyps, applicability="applies",
                                  conclusions=conclusion,
                                  notes=notes + [_cond_note(conditions)])
    if undetermined:
        return TheoremApplication(theorem="ball_inclusion", title=title,
                                  hypotheses=hyps, applicability="undetermined",
                                  notes=notes + [_cond_note(conditions)])
    return TheoremApplication(theorem="ball_inclusion", title=title,
                              hypotheses=hyps,
                              applicability="inapplicable: all seven conditions fail",
                              notes=notes + [_cond_note(conditions)])


def _cond_note(conditions) -> str:
    return "; ".join("condition %d: %s" % (c["condition"], c["status"])
                     for c in conditions)


def hopf_classification(facts: FactBase) -> TheoremApplication:
    """Inclusion of solution level sets in a Hopf-fibration fiber."""
    title = "Hopf-fiber inclusion for homogeneous maps with V_F = {0}"
    d = facts.common_degree
    hyps = [
        _hyp("harmonic_first_integral_map", facts.harmonic),
        _hyp("components homogeneous of one degree", facts.homogeneity),
        _hyp("p >= 3", "holds" if facts.p >= 3 else "fails", "component count"),
        _hyp("V_F = {0}", facts.vf_origin),
    ]
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(theorem="hopf_fiber_classification", title=title,
                                  hypotheses=hyps, applicability=blocked)
    n = facts.ambient - 1
    triple = (n, facts.p, d)
    notes = ["the admissible (n, p, d) triples are paired positionally with the "
             "Hopf fibrations S^3->S^2, S^7->S^4, S^15->S^8"]
    conclusions = [{
        "statement": "the level sets of the solutions are included in a fiber of a "
                     "Hopf fibration; (n, p, d) = %s" % (triple,),
        "triple": list(triple)}]
    if triple not in HOPF_TRIPLES:
        facts.alarms.append(
            "hypotheses of the Hopf-fiber classification verified for (n, p, d) = %s, "
            "which is outside the admissible list %s; either the V_F = {0} evidence is "
            "wrong or the encoding is falsified" % (triple, list(HOPF_TRIPLES)))
        notes.append("inconsistency alarm raised: triple outside the admissible list")
    return TheoremApplication(theorem="hopf_fiber_classification", title=title,
                              hypotheses=hyps, applicability="applies",
                              conclusions=conclusions, notes=notes)


def quadratic_pencil_classification(facts: FactBase) -> TheoremApplication:
    """Quadratic homogeneous pairs in even ambient dimension."""
    title = "Quadratic-pencil model for homogeneous degree-2 pairs"
    even = facts.ambient % 2 == 0
    hyps = [
        _hyp("harmonic_first_integral_map", facts.harmonic),
        _hyp("ambient dimension even", "holds" if even else "fails", "arity parity"),
        _hyp("p = 2", "holds" if facts.p == 2 else "fails", "component count"),
        _hyp("components homogeneous of degree 2",
             "holds" if facts.common_degree == 2 else "fails",
             "degrees %s" % (facts.homogeneity.value,)),
    ]
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(theorem="quadratic_pencil_classification", title=title,
                                  hypotheses=hyps, applicability=blocked)
    n = facts.ambient // 2
    conclusions = [
        {"statement": "Sing F = {0}"},
        {"statement": "the Milnor sphere fibration is equivalent to that of the "
                      "complex model z -> c_1 z_1^2 + ... + c_%d z_%d^2 (c_k >= 0, "
                      "not all zero)" % (n, n)},
        {"statement": "the Milnor fiber has the homotopy type of a single "
                      "%d-sphere (Milnor number 1)" % (n - 1),
         "fiber_sphere_dim": n - 1},
        {"statement": "the level sets of the solutions are included in a "
                      "%d-sphere, up to isometry" % (n - 1),
         "sphere_dim": n - 1},
    ]
    notes = ["the equivalence and the isometry are reported as existence statements; "
             "no isometry is constructed"]
    return TheoremApplication(theorem="quadratic_pencil_classification", title=title,
                              hypotheses=hyps, applicability="applies",
                              conclusions=conclusions, notes=notes)


def minimality(facts: FactBase,
               homothety_status: Optional[str] = None) -> TheoremApplication:
    """Minimality of the Milnor sphere-fibration fibers."""
    title = "Minimality of the sphere-fibration fibers"
    hyps = [
        _hyp("harmonic_first_integral_map", facts.harmonic),
        _hyp("components homogeneous of one degree", facts.homogeneity),
    ]
    blocked = _gate(hyps)
    if blocked:
        return TheoremApplication(theorem="fiber_minimality", title=title,
                                  hypotheses=hyps, applicability=blocked)
    if facts.p == 3:
        hyps.append(_hyp("p = 3", "holds", "component count"))
        return TheoremApplication(
            theorem="fiber_minimality", title=title, hypotheses=hyps,
            applicability="applies",
            conclusions=[{
                "statement": "the fibers of the Milnor sphere fibration S^%d minus the "
                             "link -> S^2 are minimal submanifolds"
                             % (facts.ambient - 1)}])
    if facts.p >= 4:
        if homothety_status == "holds":
            hyps.append(_hyp("horizontal homothety", "holds",
                             "sufficient polynomial test: dilation gradient vertical"))
            provenance = "sufficient syntactic test"
        elif "horizontally_homothetic" in facts.assertions:
            hyps.append(_hyp("horizontal homothety", "user-asserted",
                             "user assertion flag"))
            provenance = "user assertion"
        else:
            hyps.append(_hyp("horizontal homothety", "undetermined",
                             "sufficient test inconclusive and no user assertion"))
            return TheoremApplication(theorem="fiber_minimality", title=title,
                                      hypotheses=hyps, applicability="undetermined")
        return TheoremApplication(
            theorem="fiber_minimality", title=title, hypotheses=hyps,
            applicability="applies",
            conclusions=[{
                "statement": "the fibers of the Milnor sphere fibration are minimal "
                             "submanifolds (p = %d with horizontal homothety)" % facts.p,
                "homothety_provenance": provenance}])
    hyps.append(_hyp("p = 3 or (p >= 4 with horizontal homothety)", "fails",
                     "p = %d matches no condition" % facts.p))
    return TheoremApplication(theorem="fiber_minimality", title=title,
                              hypotheses=hyps, applicability="undetermined",
                              notes=["no minimality condition matches p = %d" % facts.p])


# ---------------------------------------------------------------------------
# Milnor set


@dataclass
class MilnorSetReport:
    status: str
    generators: List[Polynomial]
    degenerate: bool
    sampling: Optional[dict]
    note: str


def milnor_set_check(F: PolyMap, facts: Optional[FactBase] = None,
                     rng_seed: int = DEFAULT_SEED) -> MilnorSetReport:
    """Ideal of the rho-nonregular points plus the accumulation condition.

    For verified harmonic maps the condition holds by the fibration
    criterion; a seeded sampling falsification attempt is still run and
    any hit is an inconsistency alarm.
    """
    ctx = F.ctx
    rho = Polynomial.zero(ctx)
    for i in range(ctx.arity):
        v = Polynomial.variable(ctx, i)
        rho = rho + v * v
    if any(f == rho for f in F.components):
        return MilnorSetReport(
            status="degenerate", generators=[], degenerate=True, sampling=None,
            note="a component equals the squared distance function; the map (F, rho) "
                 "is nowhere submersive and the Milnor set is the whole space")
    gens = milnor_set_ideal(F)
    if F.p == 1:
        return MilnorSetReport(
            status="holds", generators=gens, degenerate=False, sampling=None,
            note="single analytic first integral: isolated critical value and the "
                 "accumulation condition hold automatically")
    harmonic = facts is not None and facts.harmonic.status == "holds"
    if not harmonic:
        return MilnorSetReport(
            status="unknown", generators=gens, degenerate=False, sampling=None,
            note="accumulation condition not decided for non-harmonic maps; the "
                 "Milnor-set ideal generators are reported for inspection")
    sampling = _sampling_falsification(F, gens, rng_seed)
    status = "holds"
    note = ("holds for horizontally weakly conformal harmonic maps (isolated "
            "critical value); sampling falsification attempt found no violation")
    if sampling["suspicious"] > 0:
        status = "alarm"
        note = ("sampling found candidate rho-nonregular points off the zero set "
                "accumulating near it; inconsistency alarm")
        if facts is not None:
            facts.alarms.append(
                "Milnor-set sampling falsification hit for a verified harmonic map")
    return MilnorSetReport(status=status, generators=gens, degenerate=False,
                           sampling=sampling, note=note)


def _sampling_falsification(F: PolyMap, gens: List[Polynomial], rng_seed: int) -> dict:
    """Look for near-Milnor-set points that stay away from V_F while
    approaching it; returns counters only (deterministic given the seed)."""
    from .degree import compile_float_evaluator

    rng = np.random.default_rng(rng_seed)
    n = F.arity
    comps = F.components
    jac = [[c.partial_derivative(j) for j in range(n)] for c in comps]
    eval_comps = compile_float_evaluator(comps)
    eval_jac = compile_float_evaluator([e for row in jac for e in row])
    eval_gens = compile_float_evaluator(gens)

    def f_norm(pt):
        return float(np.linalg.norm(eval_comps(pt)))

    def minors_norm(pt):
        return float(np.linalg.norm(eval_gens(pt)))

    samples = 0
    near_variety = 0
    suspicious = 0
    for k in range(1, 5):
        radius = 0.5 ** k
        hits = []
        for _ in range(24):
            x = rng.standard_normal(n)
            x *= radius / np.linalg.norm(x)
            # a few Gauss-Newton steps toward V_F
            for _ in range(25):
                val = eval_comps(x)
                if np.linalg.norm(val) < 1e-12:
                    break
                J = eval_jac(x).reshape(F.p, n)
                JJt = J @ J.T
                try:
                    lam = np.linalg.solve(JJt, val)
                except np.linalg.LinAlgError:
                    break
                x = x - J.T @ lam
            samples += 1
            r = float(np.linalg.norm(x))
            if f_norm(x) < 1e-10 and radius / 4 <= r <= radius * 4 and r > 1e-8:
                near_variety += 1
                hits.append(x)
        for x in hits:
            for _ in range(8):
                y = x + rng.standard_normal(n) * (np.linalg.norm(x) / 16.0)
                fy = f_norm(y)
                my = minors_norm(y)
                scale = max(1e-300, float(np.linalg.norm(y)))
                # suspicious: essentially rho-nonregular yet clearly off V_F
                if my < 1e-12 * scale and fy > 1e-3 * scale:
                    suspicious += 1
    return {"samples": samples, "near_variety": near_variety,
            "suspicious": suspicious}


# ---------------------------------------------------------------------------
# full classification


@dataclass
class ClassificationReport:
    facts: FactBase
    applications: List[TheoremApplication]
    milnor_set: Optional[MilnorSetReport]
    homothety_status: str

    def as_dict(self):
        facts = self.facts
        chi = _chi_of(self.applications)
        return {
            "facts": {
                "ambient_dimension": facts.ambient,
                "components": facts.p,
                "harmonic_first_integral_map": facts.harmonic.as_dict(),
                "homogeneity": {
                    "status": facts.homogeneity.status,
                    "degrees": [str(d) for d in facts.homogeneity.value],
                    "common_degree": facts.common_degree,
                },
                "isolated_singularity": facts.isolated.as_dict(),
                "singular_ideal_dimension": facts.sing_dim,
                "singular_ideal_basis": facts.sing_basis,
                "vf_only_origin": facts.vf_origin.as_dict(),
                "local_degrees": {
                    "status": facts.degrees_fact.status,
                    "common": facts.degrees_fact.value
                    if isinstance(facts.degrees_fact.value, int) else None,
                    "per_component": {str(k): r.degree
                                      for k, r in facts.degrees.items()},
                },
                "assertions": sorted(facts.assertions),
            },
            "chi_mp": chi,
            "homothety_sufficient": self.homothety_status,
            "milnor_set": None if self.milnor_set is None else {
                "status": self.milnor_set.status,
                "generator_count": len(self.milnor_set.generators),
                "sampling": self.milnor_set.sampling,
                "note": self.milnor_set.note,
            },
            "theorems": [a.as_dict() for a in self.applications],
            "alarms": list(facts.alarms),
        }


def _chi_of(applications) -> Optional[int]:
    for app in applications:
        if app.theorem == "fiber_euler_characteristic":
            for c in app.conclusions:
                if c.get("chi") is not None:
                    return c["chi"]
    return None


def classify(F: PolyMap, assertions=(), rng_seed: int = DEFAULT_SEED,
             facts: Optional[FactBase] = None) -> ClassificationReport:
    """Apply every theorem in the fixed order and assemble the report."""
    facts = facts or build_facts(F, assertions=assertions, rng_seed=rng_seed)
    homothety = horizontally_homothetic_sufficient(F, facts.verdict.gram)
    applications = [fibration_existence(facts)]
    euler = euler_characteristics(facts)
    applications.append(euler)
    chi = _chi_of([euler])
    applications.append(link_euler(facts, chi))
    applications.append(ball_inclusion(facts))
    applications.append(hopf_classification(facts))
    applications.append(quadratic_pencil_classification(facts))
    applications.append(minimality(facts, homothety_status=homothety.status))
    milnor_set = milnor_set_check(F, facts, rng_seed=rng_seed)
    return ClassificationReport(facts=facts, applications=applications,
                                milnor_set=milnor_set,
                                homothety_status=homothety.status)
