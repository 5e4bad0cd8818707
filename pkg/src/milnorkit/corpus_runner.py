"""Bundled example corpus: enumeration, batch runs, expectation matching.

Each entry pairs a problem file with an expected-verdict file holding a
list of (path, value) probes into the machine report.  `run_all` builds
one combined canonical JSON document over all entries (sorted by name)
and compares every probe; a mismatch names the entry and the path.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import yaml

from .pipeline import run_full
from .problems import load_problem
from .report import RunConfig, emit_machine

CORPUS_DIR = Path(__file__).parent / "corpus"


@dataclass
class CorpusEntry:
    name: str
    problem: Path
    expect: Path
    degree_components: List[int]


def list_entries(corpus_dir: Optional[Path] = None) -> List[CorpusEntry]:
    base = Path(corpus_dir) if corpus_dir else CORPUS_DIR
    with open(base / "index.yaml", "r", encoding="utf-8") as fh:
        index = yaml.safe_load(fh)
    entries = []
    for raw in index["entries"]:
        entries.append(CorpusEntry(
            name=raw["name"],
            problem=base / raw["problem"],
            expect=base / raw["expect"],
            degree_components=list(raw.get("degree_components") or []),
        ))
    entries.sort(key=lambda e: e.name)
    return entries


def run_entry(entry: CorpusEntry, seed: int) -> dict:
    spec = load_problem(entry.problem)
    config = RunConfig(command="corpus", input_path=str(entry.problem),
                       fmt="machine", seed=seed)
    report = run_full(spec, config, degree_components=entry.degree_components)
    return report.as_dict()


def _walk(document, path):
    node = document
    for key in path:
        if isinstance(node, dict):
            if key not in node:
                return False, None
            node = node[key]
        elif isinstance(node, list):
            try:
                node = node[int(key)]
            except (ValueError, IndexError):
                return False, None
        else:
            return False, None
    return True, node


def check_expectations(entry: CorpusEntry, document: dict) -> List[str]:
    """Every probe in the .expect file must match the report exactly."""
    with open(entry.expect, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    mismatches = []
    for probe in data.get("expect", []):
        path = probe["path"]
        ok, found = _walk(document, path)
        if not ok:
            mismatches.append("%s: path %s missing" % (entry.name, path))
        elif found != probe["value"]:
            mismatches.append("%s: path %s is %r, expected %r"
                              % (entry.name, path, found, probe["value"]))
    return mismatches


def run_all(seed: int, corpus_dir: Optional[Path] = None):
    """(exit_code, combined_document, mismatch list)."""
    combined = {}
    mismatches: List[str] = []
    for entry in list_entries(corpus_dir):
        document = run_entry(entry, seed)
        combined[entry.name] = document
        try:
            mismatches.extend(check_expectations(entry, document))
        except OSError as exc:
            mismatches.append("%s: cannot read expectation file: %s"
                              % (entry.name, exc))
        except (KeyError, TypeError, yaml.YAMLError) as exc:
            mismatches.append("%s: malformed expectation file: %s"
                              % (entry.name, exc))
    payload = {"entries": combined, "expectation_mismatches": mismatches}
    return (0 if not mismatches else 1), payload


def machine_bytes(payload) -> bytes:
    return emit_machine(payload)
