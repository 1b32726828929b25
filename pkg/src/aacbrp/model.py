"""Domain types: outcomes, characterisation schemas, cases and casebases."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Union

ComponentValue = Union[frozenset, int]
Characterisation = tuple  # tuple[ComponentValue, ...], one entry per schema component


class SchemaError(ValueError):
    """Raised when a value does not fit the casebase schema."""


class Polarity(enum.Enum):
    DEFAULT = "default"
    NON_DEFAULT = "non_default"


@dataclass(frozen=True)
class Outcome:
    polarity: Polarity
    name: str

    def __str__(self) -> str:
        return self.name


class ComponentKind(enum.Enum):
    FEATURES = "features"
    STAGES = "stages"
    INTEGER = "integer"


@dataclass(frozen=True)
class ComponentSchema:
    name: str
    kind: ComponentKind
    max_stage: int | None = None

    def __post_init__(self):
        if self.kind is ComponentKind.STAGES:
            if self.max_stage is None or self.max_stage < 0:
                raise SchemaError(f"stage component {self.name!r} needs max_stage >= 0")
        elif self.max_stage is not None:
            raise SchemaError(f"max_stage only applies to stage components ({self.name!r})")

    def least(self, observed: Iterable[ComponentValue] = ()) -> ComponentValue:
        """The bottom element of this component's order."""
        if self.kind is ComponentKind.FEATURES:
            return frozenset()
        if self.kind is ComponentKind.STAGES:
            return 0
        return min(observed, default=0)


@dataclass(frozen=True)
class Case:
    id: str
    x: Characterisation
    outcome: Outcome


def make_characterisation(*values) -> Characterisation:
    """Build a characterisation, turning any iterable of features into a frozenset."""
    out = []
    for v in values:
        if isinstance(v, (bool,)):
            raise TypeError("booleans are not valid component values")
        if isinstance(v, int):
            out.append(v)
        else:
            out.append(frozenset(v))
    return tuple(out)


@dataclass(frozen=True)
class Casebase:
    schema: tuple[ComponentSchema, ...]
    cases: tuple[Case, ...]
    default: Case
    outcomes: tuple[Outcome, Outcome] = field(default=None)  # (default, non-default)

    def __post_init__(self):
        object.__setattr__(self, "schema", tuple(self.schema))
        object.__setattr__(self, "cases", tuple(self.cases))
        if self.outcomes is None:
            other = next((c.outcome for c in self.cases if c.outcome != self.default.outcome), None)
            if other is None:
                other = Outcome(Polarity.NON_DEFAULT, "not_" + self.default.outcome.name)
            object.__setattr__(self, "outcomes", (self.default.outcome, other))

    @property
    def default_outcome(self) -> Outcome:
        return self.outcomes[0]

    @property
    def non_default_outcome(self) -> Outcome:
        return self.outcomes[1]

    def outcome_named(self, name: str) -> Outcome:
        for o in self.outcomes:
            if o.name == name:
                return o
        raise KeyError(name)

    def all_cases(self) -> tuple[Case, ...]:
        """Default argument first, then the casebase in order."""
        return (self.default,) + self.cases

    def component_index(self, name: str) -> int:
        for i, c in enumerate(self.schema):
            if c.name == name:
                return i
        raise SchemaError(f"unknown component {name!r}")

    def with_cases(self, cases: Iterable[Case]) -> "Casebase":
        return Casebase(self.schema, tuple(cases), self.default, self.outcomes)


def build_casebase(
    schema,
    cases,
    default_name: str,
    non_default_name: str,
    default_x: Characterisation | None = None,
    default_id: str = "default",
) -> Casebase:
    """Convenience constructor taking ``(id, x, outcome_name)`` triples."""
    d = Outcome(Polarity.DEFAULT, default_name)
    nd = Outcome(Polarity.NON_DEFAULT, non_default_name)
    by_name = {default_name: d, non_default_name: nd}
    built = tuple(Case(cid, make_characterisation(*x), by_name[y]) for cid, x, y in cases)
    schema = tuple(schema)
    if default_x is None:
        default_x = tuple(
            comp.least(c.x[i] for c in built) for i, comp in enumerate(schema)
        )
    else:
        default_x = make_characterisation(*default_x)
    return Casebase(schema, built, Case(default_id, default_x, d), (d, nd))


def check_value(comp: ComponentSchema, value) -> str | None:
    if comp.kind is ComponentKind.FEATURES:
        if not isinstance(value, frozenset):
            return f"component {comp.name!r} expects a feature set"
        if not all(isinstance(f, str) for f in value):
            return f"component {comp.name!r} has non-string feature identifiers"
        return None
    if isinstance(value, bool) or not isinstance(value, int):
        return f"component {comp.name!r} expects an integer"
    if comp.kind is ComponentKind.STAGES and not 0 <= value <= comp.max_stage:
        return f"stage {value} out of range 0..{comp.max_stage} for component {comp.name!r}"
    return None


def check_characterisation(schema, x) -> list[str]:
    if len(x) != len(schema):
        return [f"arity {len(x)} does not match schema arity {len(schema)}"]
    return [msg for comp, v in zip(schema, x) if (msg := check_value(comp, v))]


def validate_casebase(cb: Casebase) -> list[str]:
    """Return a list of human-readable violations; empty when ``cb`` is well formed."""
    problems = []
    names = [c.name for c in cb.schema]
    if len(set(names)) != len(names):
        problems.append("schema: duplicate component names")
    d, nd = cb.outcomes
    if d.polarity is not Polarity.DEFAULT or nd.polarity is not Polarity.NON_DEFAULT:
        problems.append("outcomes: polarities must be (default, non-default)")
    if d.name == nd.name:
        problems.append("outcomes: the two outcome names must differ")
    if cb.default.outcome != d:
        problems.append(f"{cb.default.id}: default argument must carry the default outcome")

    seen = set()
    for case in cb.all_cases():
        if case.id in seen:
            problems.append(f"{case.id}: duplicate case id")
        seen.add(case.id)
        if case.outcome not in cb.outcomes:
            problems.append(f"{case.id}: outcome {case.outcome.name!r} not one of the casebase outcomes")
        for msg in check_characterisation(cb.schema, case.x):
            problems.append(f"{case.id}: {msg}")
    return problems
