"""Casebase documents (JSON), new-case documents and framework export.

A casebase document looks like::

    {
      "schema": [{"name": "H", "kind": "features"},
                 {"name": "S", "kind": "stages", "max_stage": 3}],
      "preferences": ["H", "S"],
      "outcomes": {"default": "-", "non_default": "+"},
      "default": {"id": "C0", "values": {"H": [], "S": 0}},
      "cases": [{"id": "C1", "values": {"H": ["a"], "S": 1}, "outcome": "+"}]
    }

``default`` is optional (its characterisation falls back to the least
element of every component). A new-case document is ``{"cases": [...]}``
with the same case syntax; ``outcome`` may be omitted there.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .af import ArgumentationFramework, EdgeKind
from .model import (
    Case,
    Casebase,
    ComponentKind,
    ComponentSchema,
    Outcome,
    Polarity,
    SchemaError,
    validate_casebase,
)
from .orders import PreferenceSequence


class ParseError(ValueError):
    """Malformed document; ``where`` is a line:column or a JSON path."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass(frozen=True)
class LabelledCase:
    id: str
    x: tuple
    outcome: str | None


def _load(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None


def _expect(obj, typ, where: str):
    if not isinstance(obj, typ):
        names = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise ParseError(where, f"expected {names}")
    return obj


def _keys(obj: dict, where: str, required: set, optional: set = frozenset()):
    _expect(obj, dict, where)
    unknown = sorted(set(obj) - required - set(optional))
    if unknown:
        raise ParseError(where, f"unknown key {unknown[0]!r}")
    missing = sorted(required - set(obj))
    if missing:
        raise ParseError(where, f"missing key {missing[0]!r}")


def _parse_schema(raw, where="schema") -> tuple[ComponentSchema, ...]:
    _expect(raw, list, where)
    out = []
    for i, item in enumerate(raw):
        w = f"{where}[{i}]"
        _keys(item, w, {"name", "kind"}, {"max_stage"})
        name = _expect(item["name"], str, f"{w}.name")
        try:
            kind = ComponentKind(item["kind"])
        except ValueError:
            raise ParseError(f"{w}.kind", f"unknown component kind {item['kind']!r}") from None
        max_stage = item.get("max_stage")
        if max_stage is not None:
            _expect(max_stage, int, f"{w}.max_stage")
        try:
            out.append(ComponentSchema(name, kind, max_stage))
        except SchemaError as exc:
            raise ParseError(w, str(exc)) from None
    names = [c.name for c in out]
    if len(set(names)) != len(names):
        raise ParseError(where, "duplicate component names")
    return tuple(out)


def _parse_values(schema, raw, where) -> tuple:
    _keys(raw, where, {c.name for c in schema})
    values = []
    for comp in schema:
        v = raw[comp.name]
        w = f"{where}.{comp.name}"
        if comp.kind is ComponentKind.FEATURES:
            _expect(v, list, w)
            for j, f in enumerate(v):
                _expect(f, str, f"{w}[{j}]")
            values.append(frozenset(v))
        else:
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(w, "expected int")
            if comp.kind is ComponentKind.STAGES and not 0 <= v <= comp.max_stage:
                raise ParseError(w, f"stage {v} out of range 0..{comp.max_stage}")
            values.append(v)
    return tuple(values)


def _parse_cases(schema, raw, where, outcome_required: bool) -> list[LabelledCase]:
    _expect(raw, list, where)
    out, seen = [], set()
    for i, item in enumerate(raw):
        w = f"{where}[{i}]"
        if outcome_required:
            _keys(item, w, {"id", "values", "outcome"})
        else:
            _keys(item, w, {"id", "values"}, {"outcome"})
        cid = _expect(item["id"], str, f"{w}.id")
        if cid in seen:
            raise ParseError(f"{w}.id", f"duplicate case id {cid!r}")
        seen.add(cid)
        outcome = item.get("outcome")
        if outcome is not None:
            _expect(outcome, str, f"{w}.outcome")
        out.append(LabelledCase(cid, _parse_values(schema, item["values"], f"{w}.values"), outcome))
    return out


def parse_casebase(text: str) -> tuple[Casebase, PreferenceSequence]:
    doc = _load(text)
    _keys(doc, "$", {"schema", "preferences", "outcomes", "cases"}, {"default"})
    schema = _parse_schema(doc["schema"])

    prefs = _expect(doc["preferences"], list, "preferences")
    for i, p in enumerate(prefs):
        _expect(p, str, f"preferences[{i}]")
    try:
        P = PreferenceSequence.over(schema, prefs)
    except SchemaError as exc:
        raise ParseError("preferences", str(exc)) from None

    _keys(doc["outcomes"], "outcomes", {"default", "non_default"})
    d_name = _expect(doc["outcomes"]["default"], str, "outcomes.default")
    nd_name = _expect(doc["outcomes"]["non_default"], str, "outcomes.non_default")
    if d_name == nd_name:
        raise ParseError("outcomes", "outcome names must differ")
    d, nd = Outcome(Polarity.DEFAULT, d_name), Outcome(Polarity.NON_DEFAULT, nd_name)
    by_name = {d_name: d, nd_name: nd}

    raw_cases = _parse_cases(schema, doc["cases"], "cases", outcome_required=True)
    cases = []
    for i, c in enumerate(raw_cases):
        if c.outcome not in by_name:
            raise ParseError(f"cases[{i}].outcome", f"unknown outcome {c.outcome!r}")
        cases.append(Case(c.id, c.x, by_name[c.outcome]))

    default_id = "default"
    if "default" in doc:
        _keys(doc["default"], "default", set(), {"id", "values"})
        default_id = _expect(doc["default"].get("id", default_id), str, "default.id")
        if "values" in doc["default"]:
            default_x = _parse_values(schema, doc["default"]["values"], "default.values")
        else:
            default_x = None
    else:
        default_x = None
    if default_x is None:
        default_x = tuple(comp.least(c.x[i] for c in cases) for i, comp in enumerate(schema))
    if any(c.id == default_id for c in cases):
        raise ParseError("default.id", f"duplicate case id {default_id!r}")

    cb = Casebase(schema, tuple(cases), Case(default_id, default_x, d), (d, nd))
    problems = validate_casebase(cb)
    if problems:
        raise ParseError("$", problems[0])
    return cb, P


def parse_new_cases(text: str, schema) -> list[LabelledCase]:
    doc = _load(text)
    _keys(doc, "$", {"cases"})
    return _parse_cases(schema, doc["cases"], "cases", outcome_required=False)


def _values_doc(schema, x) -> dict:
    out = {}
    for comp, v in zip(schema, x):
        out[comp.name] = sorted(v) if comp.kind is ComponentKind.FEATURES else v
    return out


def _schema_doc(schema) -> list:
    out = []
    for c in schema:
        item = {"name": c.name, "kind": c.kind.value}
        if c.kind is ComponentKind.STAGES:
            item["max_stage"] = c.max_stage
        out.append(item)
    return out


def serialise_casebase(cb: Casebase, P: PreferenceSequence) -> str:
    doc = {
        "schema": _schema_doc(cb.schema),
        "preferences": [cb.schema[o.component].name for o in P.orders],
        "outcomes": {"default": cb.default_outcome.name, "non_default": cb.non_default_outcome.name},
        "default": {"id": cb.default.id, "values": _values_doc(cb.schema, cb.default.x)},
        "cases": [
            {"id": c.id, "values": _values_doc(cb.schema, c.x), "outcome": c.outcome.name}
            for c in cb.cases
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialise_new_cases(schema, cases) -> str:
    """``cases`` is an iterable of objects with ``id``, ``x`` and optional ``outcome`` (name or Outcome)."""
    items = []
    for c in cases:
        item = {"id": c.id, "values": _values_doc(schema, c.x)}
        outcome = getattr(c, "outcome", None)
        if outcome is not None:
            item["outcome"] = str(outcome)
        items.append(item)
    return json.dumps({"cases": items}, indent=2, ensure_ascii=False) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_framework(af: ArgumentationFramework, fmt: str = "dot", grounded=None) -> str:
    """Render as Graphviz DOT or as a sorted ``attacker -> target [label]`` edge list."""
    edges = sorted(af.attacks, key=lambda e: (e.attacker.name, e.target.name, e.label))
    if fmt == "edges":
        lines = sorted(f"{e.attacker.name} -> {e.target.name} [{e.label}]" for e in edges)
        return "".join(line + "\n" for line in lines)
    if fmt != "dot":
        raise ValueError(f"unknown export format {fmt!r}")
    out = ["digraph AF {", "  rankdir=BT;"]
    for a in sorted(af.arguments, key=lambda r: r.name):
        attrs = ["shape=box"]
        if grounded is not None and a in grounded:
            attrs.append("penwidth=2")
        out.append(f"  {_dot_id(a.name)} [{', '.join(attrs)}];")
    for e in edges:
        if e.kind is EdgeKind.NEW_CASE:
            attrs = "style=dashed, color=red"
        else:
            attrs = f'label="{e.label}"'
        out.append(f"  {_dot_id(e.attacker.name)} -> {_dot_id(e.target.name)} [{attrs}];")
    out.append("}")
    return "\n".join(out) + "\n"
