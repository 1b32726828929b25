import random

import pytest

from aacbrp.model import (
    Case,
    ComponentKind,
    ComponentSchema,
    Outcome,
    Polarity,
    SchemaError,
    build_casebase,
    validate_casebase,
)
from oracles import random_casebase
from worked_examples import STAGED, example1


def test_example_casebase_is_valid():
    assert validate_casebase(example1()) == []


def test_arity_violation_reported_once():
    cb = example1()
    bad = Case("C9", (frozenset(), frozenset(), frozenset()), cb.non_default_outcome)
    problems = validate_casebase(cb.with_cases(cb.cases + (bad,)))
    assert len(problems) == 1
    assert problems[0].startswith("C9:") and "arity" in problems[0]


def test_stage_range_violation():
    cb = build_casebase(STAGED, [("C1", ("a", 1), "+")], "-", "+")
    bad = Case("C2", (frozenset("a"), 5), cb.non_default_outcome)
    problems = validate_casebase(cb.with_cases(cb.cases + (bad,)))
    assert problems == ["C2: stage 5 out of range 0..3 for component 'S'"]


def test_duplicate_ids_and_wrong_default_outcome():
    cb = example1()
    dup = Case("C1", cb.cases[0].x, cb.cases[0].outcome)
    assert any("duplicate" in p for p in validate_casebase(cb.with_cases(cb.cases + (dup,))))
    wrong = type(cb)(cb.schema, cb.cases, Case("C0", cb.default.x, cb.non_default_outcome), cb.outcomes)
    assert any("default argument" in p for p in validate_casebase(wrong))


def test_stage_schema_needs_max_stage():
    with pytest.raises(SchemaError):
        ComponentSchema("S", ComponentKind.STAGES)
    with pytest.raises(SchemaError):
        ComponentSchema("S", ComponentKind.STAGES, -1)
    with pytest.raises(SchemaError):
        ComponentSchema("F", ComponentKind.FEATURES, 2)


def test_least_elements():
    assert ComponentSchema("F", ComponentKind.FEATURES).least() == frozenset()
    assert ComponentSchema("S", ComponentKind.STAGES, 2).least() == 0
    assert ComponentSchema("n", ComponentKind.INTEGER).least([4, -2, 7]) == -2


def test_outcomes_are_distinct_by_polarity():
    cb = example1()
    assert cb.default_outcome == Outcome(Polarity.DEFAULT, "-")
    assert cb.outcome_named("+").polarity is Polarity.NON_DEFAULT


def test_random_casebases_validate():
    rng = random.Random(5)
    for _ in range(200):
        cb, _ = random_casebase(rng)
        assert validate_casebase(cb) == []
