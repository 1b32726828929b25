import json
import random

import pytest

from aacbrp.engine import AACBRP
from aacbrp.io import (
    LabelledCase,
    ParseError,
    export_framework,
    parse_casebase,
    parse_new_cases,
    serialise_casebase,
    serialise_new_cases,
)
from oracles import random_casebase, random_new_case
from worked_examples import N1, example1, tiers

DOC = {
    "schema": [{"name": "H", "kind": "features"}, {"name": "L", "kind": "features"}],
    "preferences": ["H", "L"],
    "outcomes": {"default": "-", "non_default": "+"},
    "default": {"id": "C0"},
    "cases": [
        {"id": "C1", "values": {"H": [], "L": ["a", "b"]}, "outcome": "+"},
        {"id": "C2", "values": {"H": ["c"], "L": []}, "outcome": "+"},
        {"id": "C3", "values": {"H": ["d"], "L": []}, "outcome": "-"},
    ],
}


def dump(doc):
    return json.dumps(doc)


def test_parse_matches_example():
    cb, P = parse_casebase(dump(DOC))
    ref = example1()
    assert cb.all_cases() == ref.all_cases()
    assert [o.component for o in P.orders] == [o.component for o in tiers().orders]


def test_roundtrip_is_canonical():
    cb, P = parse_casebase(dump(DOC))
    text = serialise_casebase(cb, P)
    cb2, P2 = parse_casebase(text)
    assert cb2 == cb and P2 == P
    assert serialise_casebase(cb2, P2) == text


def test_random_roundtrip():
    rng = random.Random(4)
    for _ in range(100):
        cb, P = random_casebase(rng)
        cb2, P2 = parse_casebase(serialise_casebase(cb, P))
        assert cb2.all_cases() == cb.all_cases() and P2 == P
        new = [LabelledCase("N", random_new_case(rng, cb), None)]
        assert parse_new_cases(serialise_new_cases(cb.schema, new), cb.schema) == new


@pytest.mark.parametrize(
    "mutate, where",
    [
        (lambda d: d["cases"].append(dict(d["cases"][0])), "cases[3].id"),
        (lambda d: d.update(extra=1), "$"),
        (lambda d: d["cases"][1].update(colour="red"), "cases[1]"),
        (lambda d: d["cases"][0].update(outcome="?"), "cases[0].outcome"),
        (lambda d: d.update(preferences=["H", "Q"]), "preferences"),
        (lambda d: d["cases"][0]["values"].pop("L"), "cases[0].values"),
        (lambda d: d["schema"].append({"name": "S", "kind": "stages"}), "schema[2]"),
    ],
)
def test_invalid_documents(mutate, where):
    doc = json.loads(dump(DOC))
    mutate(doc)
    with pytest.raises(ParseError) as info:
        parse_casebase(dump(doc))
    assert info.value.where.startswith(where)


def test_syntax_error_has_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_casebase('{"schema": [\n  1,,\n]}')
    assert info.value.where == "line 2 column 5"


def test_new_cases_outcome_optional():
    cases = parse_new_cases('{"cases": [{"id": "N1", "values": {"H": ["d"], "L": ["a", "b"]}}]}', example1().schema)
    assert cases == [LabelledCase("N1", N1, None)]


def test_export_edges_and_dot_are_deterministic():
    engine = AACBRP(example1(), tiers())
    pred = engine.predict(N1, "N1")
    text = export_framework(pred.framework, "edges")
    assert text == "C1 -> C0 [2]\nC2 -> C0 [1]\nC3 -> C1 [1]\nN1 -> C2 [new]\n"
    dot = export_framework(pred.framework, "dot", pred.grounded.grounded)
    assert dot == export_framework(engine.predict(N1, "N1").framework, "dot", pred.grounded.grounded)
    assert dot.startswith("digraph AF {\n  rankdir=BT;\n")
    assert '"C0" [shape=box, penwidth=2];' in dot
    assert '"C1" [shape=box];' in dot
    assert '"N1" -> "C2" [style=dashed, color=red];' in dot
    assert '"C1" -> "C0" [label="2"];' in dot
    with pytest.raises(ValueError):
        export_framework(pred.framework, "svg")
