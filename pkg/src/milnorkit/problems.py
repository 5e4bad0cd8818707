"""Problem files: the human-written input format.

A problem file is a small YAML document with a fixed schema:

    variables: [x, y, z, w]          # required, ordered, distinct
    maps:                            # optional: name -> component expressions
      F: ["x^2 + y^2 - z^2 - w^2", "2*x*z + 2*y*w"]
    vector_fields:                   # optional: name -> one expression per variable
      X1: ["0", "2*z*w", "...", "..."]
    one_forms:                       # optional: name -> one coefficient per variable
      w1: ["a^2 - b^2", "-2*a*b", "...", "..."]
    assertions: [horizontally_homothetic]
    notes: free text

Unknown top-level keys are rejected rather than ignored: a silent typo
in an assertion flag would change which theorems apply.  All expressions
are parsed in the single declared variable context; any undeclared
identifier is an error naming the offending entity.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Dict, List

import yaml

from .classify import KNOWN_ASSERTIONS
from .exprs import ParseError, parse_polynomial
from .forms import DiffForm, VectorField
from .harmonics import PolyMap
from .poly import Polynomial, VariableContext

ALLOWED_KEYS = {"variables", "maps", "vector_fields", "one_forms", "assertions", "notes"}


class ProblemFileError(ValueError):
    """Schema violation, dangling reference or parse failure in a problem file."""


@dataclass
class ProblemSpec:
    ctx: VariableContext
    maps: Dict[str, PolyMap]
    vector_fields: Dict[str, VectorField]
    one_forms: Dict[str, DiffForm]
    assertions: List[str]
    notes: str
    digest: str
    path: str = "<memory>"

    @property
    def first_map(self) -> PolyMap:
        if not self.maps:
            raise ProblemFileError("problem declares no maps")
        return next(iter(self.maps.values()))

    @property
    def first_map_name(self) -> str:
        if not self.maps:
            raise ProblemFileError("problem declares no maps")
        return next(iter(self.maps))


def _require(cond: bool, message: str):
    if not cond:
        raise ProblemFileError(message)


def _parse_exprs(raw, ctx: VariableContext, what: str) -> List[Polynomial]:
    _require(isinstance(raw, list) and raw, "%s must be a nonempty list of expression strings" % what)
    out = []
    for i, text in enumerate(raw, start=1):
        _require(isinstance(text, str), "%s entry %d is not a string" % (what, i))
        try:
            out.append(parse_polynomial(text, ctx))
        except ParseError as exc:
            raise ProblemFileError("%s entry %d: %s" % (what, i, exc))
    return out


def parse_problem_text(text: str, path: str = "<memory>") -> ProblemSpec:
    digest = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ProblemFileError("not a well-formed document: %s" % exc)
    _require(isinstance(doc, dict), "top level must be a key-value mapping")
    unknown = set(doc) - ALLOWED_KEYS
    _require(not unknown, "unknown top-level keys rejected: %s" % sorted(unknown))

    variables = doc.get("variables")
    _require(isinstance(variables, list) and variables,
             "`variables` must be a nonempty list")
    for name in variables:
        _require(isinstance(name, str) and name.isidentifier(),
                 "variable name %r is not an identifier" % (name,))
    try:
        ctx = VariableContext(variables)
    except ValueError as exc:
        raise ProblemFileError(str(exc))

    maps: Dict[str, PolyMap] = {}
    raw_maps = doc.get("maps") or {}
    _require(isinstance(raw_maps, dict), "`maps` must be a mapping name -> expression list")
    for name, exprs in raw_maps.items():
        maps[str(name)] = PolyMap(_parse_exprs(exprs, ctx, "map %s" % name))

    fields: Dict[str, VectorField] = {}
    raw_fields = doc.get("vector_fields") or {}
    _require(isinstance(raw_fields, dict),
             "`vector_fields` must be a mapping name -> component list")
    for name, exprs in raw_fields.items():
        comps = _parse_exprs(exprs, ctx, "vector field %s" % name)
        _require(len(comps) == ctx.arity,
                 "vector field %s needs %d components, got %d"
                 % (name, ctx.arity, len(comps)))
        fields[str(name)] = VectorField(comps)

    forms: Dict[str, DiffForm] = {}
    raw_forms = doc.get("one_forms") or {}
    _require(isinstance(raw_forms, dict),
             "`one_forms` must be a mapping name -> coefficient list")
    for name, exprs in raw_forms.items():
        coeffs = _parse_exprs(exprs, ctx, "one-form %s" % name)
        _require(len(coeffs) == ctx.arity,
                 "one-form %s needs %d coefficients, got %d"
                 % (name, ctx.arity, len(coeffs)))
        forms[str(name)] = DiffForm.one_form(coeffs)

    assertions = doc.get("assertions") or []
    _require(isinstance(assertions, list), "`assertions` must be a list of flags")
    for flag in assertions:
        _require(isinstance(flag, str) and flag in KNOWN_ASSERTIONS,
                 "unknown assertion flag %r (known: %s)"
                 % (flag, ", ".join(sorted(KNOWN_ASSERTIONS))))

    notes = doc.get("notes") or ""
    _require(isinstance(notes, str), "`notes` must be a string")

    return ProblemSpec(ctx=ctx, maps=maps, vector_fields=fields, one_forms=forms,
                       assertions=list(assertions), notes=notes, digest=digest,
                       path=path)


def load_problem(path) -> ProblemSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProblemFileError("cannot read %s: %s" % (path, exc))
    spec = parse_problem_text(text, path=str(path))
    return spec
