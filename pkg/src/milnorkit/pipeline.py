"""Verification pipelines: problem spec in, report out.

`run_verify` executes the identity checks (first integrals, Frobenius
integrability, involutivity, harmonicity, independence);  `run_degree`
computes Milnor numbers and certified local degrees with the numerical
oracles alongside; `run_classify` applies the theorem engine; and
`run_full` is the superset the corpus runner uses.  All randomness is
driven by the seed in the run configuration, so reports are reproducible
byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .classify import classify
from .degree import (el_degree, generic_target, gradient_map, preimage_degree,
                     winding_degree_2d)
from .forms import first_integral_check, frobenius_check, involutivity_check
from .harmonics import (gram, horizontally_homothetic_sufficient,
                        is_harmonic_first_integral_map, one_form_harmonic)
from .problems import ProblemSpec
from .report import CheckRecord, Report, RunConfig

ALL_CHECKS = ("independence", "laplacian", "gram", "harmonic_map", "homothety",
              "first_integral", "involutivity", "integrability",
              "harmonic_form", "integrability_system")


def _selected(config: RunConfig, check: str) -> bool:
    return config.checks is None or check in config.checks


def run_verify(spec: ProblemSpec, config: RunConfig) -> Report:
    report = Report(config=config, input_digest=spec.digest)
    for name, F in spec.maps.items():
        verdict = is_harmonic_first_integral_map(F)
        if verdict.consistency_alarm:
            report.alarms.append("%s: %s" % (name, verdict.consistency_alarm))
        if _selected(config, "independence"):
            indep = verdict.independence
            report.add(CheckRecord(name="independence:%s" % name, status=indep.status,
                                   witness={"detail": indep.detail}))
        if _selected(config, "laplacian"):
            nonzero = {"component %d" % (i + 1): l.to_string()
                       for i, l in enumerate(verdict.laplacians) if not l.is_zero}
            report.add(CheckRecord(
                name="laplacian:%s" % name,
                status="holds" if verdict.laplacian_ok else "fails",
                witness={"residuals": nonzero} if nonzero else {}))
        if _selected(config, "gram"):
            g = verdict.gram
            witness = {}
            if g.hwc:
                witness["lambda_sq"] = g.lambda_sq.to_string()
            else:
                witness["offending"] = [
                    "%s entry (%d, %d): %s" % (kind, i, j, poly.to_string())
                    for kind, i, j, poly in g.offending]
            report.add(CheckRecord(name="gram:%s" % name,
                                   status="holds" if g.hwc else "fails",
                                   witness=witness))
        if _selected(config, "harmonic_map"):
            report.add(CheckRecord(
                name="harmonic_map:%s" % name,
                status="holds" if verdict.is_harmonic_first_integral_map else "fails",
                witness={"laplacians": "all zero" if verdict.laplacian_ok else "nonzero",
                         "horizontally_weakly_conformal": verdict.gram.hwc,
                         "independent": verdict.independence.holds,
                         "harmonicity_implied_by_conformality":
                             verdict.harmonicity_implied_by_hwc}))
        if _selected(config, "homothety"):
            hom = horizontally_homothetic_sufficient(F, verdict.gram)
            report.add(CheckRecord(
                name="homothety:%s" % name, status=hom.status,
                witness={"detail": hom.detail,
                         "residuals": [r.to_string() for r in hom.residuals]}))
        if _selected(config, "first_integral") and spec.vector_fields:
            for fname, X in spec.vector_fields.items():
                ok, matrix = first_integral_check(F.components, [X])
                residuals = [row[0].to_string() for row in matrix]
                witness = {}
                if not ok:
                    witness["residuals"] = {
                        "component %d" % (i + 1): r
                        for i, r in enumerate(residuals) if r != "0"}
                report.add(CheckRecord(
                    name="first_integral:%s:%s" % (name, fname),
                    status="holds" if ok else "fails", witness=witness))
    if _selected(config, "involutivity") and spec.vector_fields:
        fields = list(spec.vector_fields.values())
        result = involutivity_check(fields)
        witness = {"detail": result.detail}
        if result.residuals:
            witness["residuals"] = [r.to_string() for r in result.residuals]
        report.add(CheckRecord(name="involutivity", status=result.status,
                               witness=witness))
    for fname, omega in spec.one_forms.items():
        if _selected(config, "integrability"):
            single = frobenius_check([omega])[0]
            witness = {}
            if single.residuals:
                witness["residual"] = single.residuals[0].to_string()
            report.add(CheckRecord(name="integrability:%s" % fname,
                                   status=single.status, witness=witness))
        if _selected(config, "harmonic_form"):
            h = one_form_harmonic(omega)
            witness = {"closed": h["closed"], "coclosed": h["coclosed"]}
            if not h["closed"]:
                witness["d_omega"] = h["d_omega"].to_string()
            if not h["coclosed"]:
                witness["divergence"] = h["divergence"].to_string()
            report.add(CheckRecord(name="harmonic_form:%s" % fname,
                                   status=h["status"], witness=witness))
    if _selected(config, "integrability_system") and len(spec.one_forms) >= 2:
        names = list(spec.one_forms)
        results = frobenius_check(list(spec.one_forms.values()))
        for fname, result in zip(names, results):
            witness = {}
            if result.residuals:
                witness["residual"] = result.residuals[0].to_string()
            report.add(CheckRecord(name="integrability_system:%s" % fname,
                                   status=result.status, witness=witness))
    report.checks.sort(key=lambda c: c.name)
    return report


def _oracle_payloads(f, el_result, seed: int) -> dict:
    """Run the applicable numerical oracles for grad f and compare."""
    out = {}
    G = gradient_map(f)
    n = f.ctx.arity
    homogeneous = all(g.is_zero or isinstance(g.homogeneous_degree(), int)
                      for g in G.components)
    alarms: List[str] = []
    disagreements: List[str] = []
    if n == 2:
        radius = Fraction(1) if homogeneous else Fraction(1, 8)
        w = winding_degree_2d(G, radius=radius)
        if w.status != "ok" and not homogeneous:
            w = winding_degree_2d(G, radius=radius / 2)  # one halving retry
        out["winding"] = {"status": w.status, "degree": w.degree,
                          "samples": w.samples, "radius": w.radius}
        if (w.status == "ok" and el_result.status == "ok"
                and w.degree != el_result.degree):
            alarms.append("winding oracle (%d) disagrees with the exact degree (%d)"
                          % (w.degree, el_result.degree))
    magnitude = Fraction(1) if homogeneous else Fraction(1, 64)
    pre = preimage_degree(G, generic_target(n, magnitude), seeds=200, rng_seed=seed)
    if pre.estimate is None and not homogeneous:
        pre = preimage_degree(G, generic_target(n, magnitude / 2), seeds=200,
                              rng_seed=seed)
    out["preimage"] = {"estimate": pre.estimate, "solutions": pre.solutions_found,
                       "note": pre.note}
    if (el_result.status == "ok" and pre.estimate is not None
            and pre.estimate != el_result.degree):
        if el_result.mu is not None and pre.solutions_found >= el_result.mu:
            alarms.append(
                "preimage oracle found %d preimages (= the Milnor number) with signed "
                "count %d, contradicting the exact degree %d"
                % (pre.solutions_found, pre.estimate, el_result.degree))
        else:
            disagreements.append(
                "preimage signed count %d differs from the exact degree %d; root "
                "finding may have missed preimages (lower-bound evidence only)"
                % (pre.estimate, el_result.degree))
    out["ranking"] = "exact signature formula > winding > preimage"
    out["disagreements"] = disagreements
    out["alarms"] = alarms
    return out


def degree_payload(f, seed: int, with_oracles: bool = True) -> dict:
    el = el_degree(f, rng_seed=seed)
    payload = {
        "status": el.status,
        "degree": el.degree,
        "milnor_number": el.mu if el.mu is not None else "infinite",
        "note": el.note,
        "support": None if el.milnor is None else el.milnor.support_note,
    }
    if el.certificate is not None:
        cert = el.certificate
        payload["certificate"] = {
            "quotient_basis": [list(m) for m in cert.quotient_basis],
            "hessian_residue": cert.hessian_residue.to_string(),
            "functional_kind": cert.functional_kind,
            "functional": [str(v) for v in cert.functional],
            "signature": cert.signature,
            "positive": cert.positive,
            "negative": cert.negative,
            "rank": cert.rank,
            "cross_signature": cert.cross_signature,
        }
    alarms = list(el.alarms)
    if with_oracles and el.status == "ok":
        oracles = _oracle_payloads(f, el, seed)
        alarms.extend(oracles.pop("alarms"))
        payload.update(oracles)
    payload["alarms"] = alarms
    return payload


def run_degree(spec: ProblemSpec, config: RunConfig) -> Report:
    report = Report(config=config, input_digest=spec.digest)
    F = spec.first_map
    component = config.component or 1
    if not 1 <= component <= F.p:
        raise ValueError("component %d out of range 1..%d" % (component, F.p))
    f = F.components[component - 1]
    payload = degree_payload(f, config.seed)
    report.degrees[str(component)] = payload
    report.alarms.extend(payload.get("alarms", []))
    return report


def run_classify(spec: ProblemSpec, config: RunConfig) -> Report:
    report = Report(config=config, input_digest=spec.digest)
    F = spec.first_map
    assertions = sorted(set(spec.assertions) | set(config.assertions))
    result = classify(F, assertions=assertions, rng_seed=config.seed)
    report.classification = result.as_dict()
    return report


def run_full(spec: ProblemSpec, config: RunConfig,
             degree_components: Optional[List[int]] = None) -> Report:
    """Verify checks, degrees for the requested components, classification."""
    report = run_verify(spec, config)
    if spec.maps:
        F = spec.first_map
        if degree_components:
            for k in degree_components:
                f = F.components[k - 1]
                payload = degree_payload(f, config.seed)
                report.degrees[str(k)] = payload
                report.alarms.extend(payload.get("alarms", []))
        assertions = sorted(set(spec.assertions) | set(config.assertions))
        result = classify(F, assertions=assertions, rng_seed=config.seed)
        report.classification = result.as_dict()
    return report
