"""Reading and writing decision problems as JSON documents.

Problem file layout::

    {
      "criteria": [{"name": "T1", "kind": "benefit"}, ...],
      "alternatives": ["P1", ...],
      "experts": [{"name": "E1", "weight": 0.4}, ...],
      "scale": {"EH": [0.9, 0.1, 0.9], ...},            # optional overrides
      "assessments": {"E1": {"P1": {"T1": "EH", ...}}},  # expert -> alt -> crit
      "criteria_importance": {"E1": {"T1": "VH", ...}}   # expert -> crit
    }
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import difv as dv
from .pipeline import CriterionSpec, DecisionProblem, ProblemError


class SchemaError(ProblemError):
    """Problem document is not valid JSON or violates the schema."""


_TERM = {"type": "string", "minLength": 1}
_NAME = {"type": "string", "minLength": 1}

PROBLEM_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "CASPAS decision problem",
    "type": "object",
    "required": ["criteria", "alternatives", "experts", "assessments", "criteria_importance"],
    "properties": {
        "criteria": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "kind"],
                "properties": {
                    "name": _NAME,
                    "kind": {"enum": ["benefit", "cost"]},
                    "label": {"type": "string"},
                },
            },
        },
        "alternatives": {"type": "array", "minItems": 1, "items": _NAME},
        "experts": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "weight"],
                "properties": {"name": _NAME, "weight": {"type": "number", "minimum": 0, "maximum": 1}},
            },
        },
        "scale": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 3,
                "maxItems": 3,
            },
        },
        "assessments": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": {"type": "object", "additionalProperties": _TERM},
            },
        },
        "criteria_importance": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _TERM},
        },
    },
}

REPLACEMENT_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["alternative", "assessments"],
    "properties": {
        "alternative": _NAME,
        "name": _NAME,
        "assessments": {
            "type": "object",
            "additionalProperties": {"type": "object", "additionalProperties": _TERM},
        },
    },
}


def _path(error: jsonschema.ValidationError) -> str:
    return "$" + "".join(f"[{p!r}]" if isinstance(p, str) else f"[{p}]" for p in error.absolute_path)


def parse_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None


def _validate(doc: Any, schema: dict, source: str) -> None:
    errors = sorted(jsonschema.Draft202012Validator(schema).iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"{source}: {_path(e)}: {e.message}" for e in errors]
        raise SchemaError("\n".join(lines))


def _lookup(mapping: dict, key: str, where: str) -> Any:
    try:
        return mapping[key]
    except KeyError:
        raise SchemaError(f"{where}: missing entry {key!r}") from None


def problem_from_dict(doc: Any, source: str = "<input>") -> DecisionProblem:
    _validate(doc, PROBLEM_SCHEMA, source)
    criteria = [CriterionSpec(c["name"], c["kind"]) for c in doc["criteria"]]
    crit_names = [c.name for c in criteria]
    alternatives = list(doc["alternatives"])
    experts = [e["name"] for e in doc["experts"]]
    for section, known in (("assessments", experts), ("criteria_importance", experts)):
        extra = sorted(set(doc[section]) - set(known))
        if extra:
            raise SchemaError(f"{source}: $[{section!r}]: unknown experts {extra}")
    try:
        scale = dv.make_scale(doc.get("scale"))
    except dv.DIFVError as exc:
        raise SchemaError(f"{source}: $['scale']: {exc}") from None

    assessments = []
    for e in experts:
        per_alt = _lookup(doc["assessments"], e, f"{source}: $['assessments']")
        extra = sorted(set(per_alt) - set(alternatives))
        if extra:
            raise SchemaError(f"{source}: $['assessments'][{e!r}]: unknown alternatives {extra}")
        rows = []
        for a in alternatives:
            per_crit = _lookup(per_alt, a, f"{source}: $['assessments'][{e!r}]")
            extra = sorted(set(per_crit) - set(crit_names))
            if extra:
                raise SchemaError(f"{source}: $['assessments'][{e!r}][{a!r}]: unknown criteria {extra}")
            rows.append([_lookup(per_crit, c, f"{source}: $['assessments'][{e!r}][{a!r}]") for c in crit_names])
        assessments.append(rows)
    importance = []
    for e in experts:
        per_crit = _lookup(doc["criteria_importance"], e, f"{source}: $['criteria_importance']")
        extra = sorted(set(per_crit) - set(crit_names))
        if extra:
            raise SchemaError(f"{source}: $['criteria_importance'][{e!r}]: unknown criteria {extra}")
        importance.append([_lookup(per_crit, c, f"{source}: $['criteria_importance'][{e!r}]") for c in crit_names])

    try:
        return DecisionProblem(
            alternatives=alternatives,
            criteria=criteria,
            experts=experts,
            expert_weights=[e["weight"] for e in doc["experts"]],
            assessments=assessments,
            criteria_importance=importance,
            scale=scale,
        )
    except ProblemError as exc:
        raise SchemaError(f"{source}: {exc}") from None


def problem_to_dict(problem: DecisionProblem) -> dict[str, Any]:
    """Canonical document for ``problem``; scale entries differing from the default only."""
    doc: dict[str, Any] = {
        "alternatives": list(problem.alternatives),
        "criteria": [{"name": c.name, "kind": c.kind} for c in problem.criteria],
        "experts": [{"name": e, "weight": w} for e, w in zip(problem.experts, problem.expert_weights)],
        "assessments": {
            e: {a: dict(zip(problem.criterion_names, row)) for a, row in zip(problem.alternatives, mat)}
            for e, mat in zip(problem.experts, problem.assessments)
        },
        "criteria_importance": {
            e: dict(zip(problem.criterion_names, row)) for e, row in zip(problem.experts, problem.criteria_importance)
        },
    }
    overrides = {code: list(v.astuple()) for code, v in problem.scale.items() if dv.DEFAULT_SCALE.get(code) != v}
    if overrides:
        doc["scale"] = overrides
    return doc


def dumps_problem(problem: DecisionProblem) -> str:
    return json.dumps(problem_to_dict(problem), indent=2, sort_keys=True) + "\n"


def load_problem(path: str | Path) -> DecisionProblem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read: {exc.strerror}") from None
    return problem_from_dict(parse_json(text, str(path)), str(path))


def load_replacement(path: str | Path, problem: DecisionProblem) -> tuple[str, list[list[str]], str | None]:
    """Read a replacement file: ``(target alternative, ratings[e][c], new name)``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read: {exc.strerror}") from None
    doc = parse_json(text, str(path))
    _validate(doc, REPLACEMENT_SCHEMA, str(path))
    ratings = []
    for e in problem.experts:
        per_crit = _lookup(doc["assessments"], e, f"{path}: $['assessments']")
        ratings.append([_lookup(per_crit, c, f"{path}: $['assessments'][{e!r}]") for c in problem.criterion_names])
    return doc["alternative"], ratings, doc.get("name")


def bundled(name: str) -> Path:
    """Path of a data file shipped with the package (``solar.json``, ...)."""
    return Path(str(resources.files("caspas") / "data" / name))


def solar_problem() -> DecisionProblem:
    """The five-panel, four-criterion, three-engineer solar panel problem."""
    return load_problem(bundled("solar.json"))
