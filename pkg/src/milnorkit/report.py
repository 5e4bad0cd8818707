"""Report assembly and serialization.

The machine format is canonical JSON (sorted keys, fixed separators,
ASCII) so identical inputs and configuration produce byte-identical
output.  The human format prints the same content with one block per
check and explicit provenance lines per theorem conclusion; polynomials
appear in the canonical descending-grevlex order in both.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import List, Optional

from .degree import DEFAULT_SEED


@dataclass
class RunConfig:
    command: str
    input_path: str = ""
    fmt: str = "human"
    seed: int = DEFAULT_SEED
    checks: Optional[List[str]] = None
    component: Optional[int] = None
    assertions: List[str] = field(default_factory=list)

    def as_dict(self):
        return {
            "command": self.command,
            "input": self.input_path,
            "format": self.fmt,
            "seed": self.seed,
            "checks": self.checks if self.checks is not None else "all",
            "component": self.component,
            "assertions": sorted(self.assertions),
        }


@dataclass
class CheckRecord:
    name: str
    status: str                  # holds | fails | inapplicable | unknown
    witness: dict = field(default_factory=dict)

    def as_dict(self):
        return {"status": self.status, "witness": self.witness}


@dataclass
class Report:
    config: RunConfig
    input_digest: str
    checks: List[CheckRecord] = field(default_factory=list)
    degrees: dict = field(default_factory=dict)
    classification: Optional[dict] = None
    alarms: List[str] = field(default_factory=list)

    def add(self, record: CheckRecord):
        self.checks.append(record)

    @property
    def has_failure(self) -> bool:
        return any(c.status == "fails" for c in self.checks)

    @property
    def has_alarm(self) -> bool:
        if self.alarms:
            return True
        if self.classification and self.classification.get("alarms"):
            return True
        return False

    def exit_code(self) -> int:
        if self.has_alarm:
            return 3
        if self.has_failure:
            return 1
        return 0

    def as_dict(self):
        return {
            "input_digest": self.input_digest,
            "config": self.config.as_dict(),
            "checks": {c.name: c.as_dict() for c in self.checks},
            "degrees": self.degrees,
            "classification": self.classification,
            "alarms": self.alarms,
        }


def emit_machine(payload) -> bytes:
    """Canonical JSON bytes; identical payloads serialize identically."""
    if hasattr(payload, "as_dict"):
        payload = payload.as_dict()
    text = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True,
                      separators=(",", ": "))
    return (text + "\n").encode("ascii")


def emit_human(report: Report) -> str:
    lines: List[str] = []
    cfg = report.config
    lines.append("== %s: %s" % (cfg.command, cfg.input_path or "<memory>"))
    lines.append("digest %s | seed %#x" % (report.input_digest, cfg.seed))
    if cfg.assertions:
        lines.append("user assertions: %s" % ", ".join(sorted(cfg.assertions)))
    if report.checks:
        lines.append("")
        lines.append("-- checks")
        for c in report.checks:
            lines.append("%-38s %s" % (c.name, c.status.upper()))
            for key in sorted(c.witness):
                value = c.witness[key]
                if isinstance(value, list):
                    for entry in value:
                        lines.append("    %s: %s" % (key, entry))
                else:
                    lines.append("    %s: %s" % (key, value))
    if report.degrees:
        lines.append("")
        lines.append("-- local degrees")
        for comp in sorted(report.degrees):
            data = report.degrees[comp]
            lines.append("component %s:" % comp)
            for key in ("milnor_number", "status", "degree", "note"):
                if key in data and data[key] is not None:
                    lines.append("    %s: %s" % (key, data[key]))
            for oracle in ("winding", "preimage"):
                if data.get(oracle):
                    lines.append("    %s oracle: %s" % (oracle, data[oracle]))
            if data.get("certificate"):
                cert = data["certificate"]
                lines.append("    certificate: quotient dim %s, signature %s = (+%s) - (-%s)"
                             % (len(cert["quotient_basis"]), cert["signature"],
                                cert["positive"], cert["negative"]))
    if report.classification:
        lines.append("")
        lines.append("-- classification")
        facts = report.classification["facts"]
        lines.append("ambient dimension %d, %d component(s)"
                     % (facts["ambient_dimension"], facts["components"]))
        lines.append("harmonic first integral map: %s"
                     % facts["harmonic_first_integral_map"]["status"])
        lines.append("isolated singularity: %s (%s)"
                     % (facts["isolated_singularity"]["status"],
                        facts["isolated_singularity"]["provenance"]))
        lines.append("singular ideal dimension: %s via %s"
                     % (facts["singular_ideal_dimension"], facts["singular_ideal_basis"]))
        lines.append("V_F = {0}: %s (%s)" % (facts["vf_only_origin"]["status"],
                                             facts["vf_only_origin"]["provenance"]))
        if report.classification.get("chi_mp") is not None:
            lines.append("chi(M_p) = %d" % report.classification["chi_mp"])
        for app in report.classification["theorems"]:
            lines.append("")
            lines.append("[%s] %s" % (app["theorem"], app["applicability"]))
            for h in app["hypotheses"]:
                lines.append("    requires %s: %s" % (h["name"], h["status"]))
            for c in app["conclusions"]:
                lines.append("    => %s" % c["statement"])
            for note in app["notes"]:
                lines.append("    note: %s" % note)
        ms = report.classification.get("milnor_set")
        if ms:
            lines.append("")
            lines.append("[milnor_set_condition] %s" % ms["status"])
            lines.append("    note: %s" % ms["note"])
    if report.alarms or (report.classification or {}).get("alarms"):
        lines.append("")
        lines.append("-- ALARMS")
        for a in report.alarms:
            lines.append("!! %s" % a)
        for a in (report.classification or {}).get("alarms", []):
            lines.append("!! %s" % a)
    lines.append("")
    return "\n".join(lines)
