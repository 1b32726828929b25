"""Single-order AA-CBR and AA-CBR with Stages, plus framework comparison.

These are the earlier formulations the preference-sequence engine
generalises. They are written directly from their attack conditions with
plain loops, which keeps them independent of the mining kernel.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Protocol

from .af import (
    ArgumentationFramework,
    AttackEdge,
    EdgeKind,
    grounded_extension,
    new_case_arg,
)
from .engine import Prediction, arg_of
from .model import Casebase, Characterisation, ComponentKind, SchemaError, validate_casebase
from .orders import Comparison, PreferenceSequence, PreorderSpec, _from_geq


class Order(Protocol):
    def compare(self, x: Characterisation, y: Characterisation) -> Comparison: ...


@dataclass(frozen=True)
class ProductOrder:
    """x >= y iff x is at least y on every order of the sequence (the flattened lexicographic order)."""

    preferences: PreferenceSequence

    def compare(self, x, y) -> Comparison:
        cmps = [o.compare(x, y) for o in self.preferences.orders]
        return _from_geq(all(c.geq for c in cmps), all(c.flip().geq for c in cmps))


@dataclass(frozen=True)
class UnionSupersetOrder:
    """Plain superset over the union of several feature-set components."""

    components: tuple[int, ...]

    def _union(self, x) -> frozenset:
        return frozenset().union(*(x[i] for i in self.components))

    def compare(self, x, y) -> Comparison:
        a, b = self._union(x), self._union(y)
        return _from_geq(a >= b, b >= a)


class LegacyKind(enum.Enum):
    CLASSIC = "classic"
    STAGES = "stages"
    STAGES_MODIFIED = "stages-modified"


@dataclass(frozen=True)
class LegacyVariant:
    kind: LegacyKind
    order: Order | None = field(default=None)


def classic_attacks(cb: Casebase, order: Order) -> frozenset[AttackEdge]:
    """Attacks among casebase arguments under one order.

    Strict attacks carry order label 1; equal characterisations with
    different outcomes attack each other and are labelled incoherent.
    """
    cases = cb.all_cases()
    cmp = {(i, j): order.compare(a.x, b.x) for i, a in enumerate(cases) for j, b in enumerate(cases)}
    edges = set()
    for i, a in enumerate(cases):
        for j, b in enumerate(cases):
            if a.outcome == b.outcome:
                continue
            c = cmp[i, j]
            if c is Comparison.EQUIVALENT:
                edges.add(AttackEdge(arg_of(cb, a), arg_of(cb, b), EdgeKind.INCOHERENT))
            elif c is Comparison.GREATER:
                between = any(
                    g.outcome == a.outcome
                    and cmp[i, k] is Comparison.GREATER
                    and cmp[k, j] is Comparison.GREATER
                    for k, g in enumerate(cases)
                )
                if not between:
                    edges.add(AttackEdge(arg_of(cb, a), arg_of(cb, b), EdgeKind.ORDER, 1))
    return frozenset(edges)


def classic_framework(cb: Casebase, order: Order, new_x, new_id: str = "N") -> ArgumentationFramework:
    n = new_case_arg(new_id)
    edges = set(classic_attacks(cb, order))
    for c in cb.all_cases():
        if not order.compare(new_x, c.x).geq:
            edges.add(AttackEdge(n, arg_of(cb, c), EdgeKind.NEW_CASE))
    return ArgumentationFramework([arg_of(cb, c) for c in cb.all_cases()] + [n], edges)


def _predict(cb: Casebase, af: ArgumentationFramework, new_id: str) -> Prediction:
    g = grounded_extension(af)
    d = arg_of(cb, cb.default)
    outcome = cb.default_outcome if d in g else cb.non_default_outcome
    return Prediction(outcome, af, g, new_case_arg(new_id), d)


def classic_predict(cb: Casebase, order: Order, new_x, new_id: str = "N") -> Prediction:
    return _predict(cb, classic_framework(cb, order, new_x, new_id), new_id)


def stage_layout(cb: Casebase) -> tuple[int, int]:
    """Indices of the (features, stages) components; the schema must have exactly these two."""
    kinds = [c.kind for c in cb.schema]
    if sorted(k.value for k in kinds) != sorted([ComponentKind.FEATURES.value, ComponentKind.STAGES.value]):
        raise SchemaError("stages variants need exactly one feature-set and one stage component")
    f = kinds.index(ComponentKind.FEATURES)
    return f, 1 - f


def stages_attacks(cb: Casebase, modified: bool = False) -> frozenset[AttackEdge]:
    """Specificity attacks (label 1) and advance attacks (label 2).

    With ``modified`` the first concision clause additionally requires the
    blocker's stages to be no further along than the attacker's.
    """
    problems = validate_casebase(cb)
    if problems:
        raise SchemaError("; ".join(problems))
    fi, si = stage_layout(cb)
    if cb.default.x[fi] or cb.default.x[si] != 0:
        raise SchemaError("stages variants need the default characterised by no features and no stages")
    args = cb.all_cases()
    edges = set()
    for a in args:
        Fa, Sa = a.x[fi], a.x[si]
        blockers = [g for g in cb.cases if g.outcome == a.outcome]
        for b in args:
            if a.outcome == b.outcome:
                continue
            Fb, Sb = b.x[fi], b.x[si]
            if Fa > Fb:
                concise = False
                for g in blockers:
                    Fg, Sg = g.x[fi], g.x[si]
                    if Fa > Fg > Fb and (not modified or Sa >= Sg):
                        concise = True
                    elif Fg == Fa and Sa > Sg:
                        concise = True
                    elif Fb == Fg and Sa >= Sg > Sb:
                        concise = True
                    if concise:
                        break
                if not concise:
                    edges.add(AttackEdge(arg_of(cb, a), arg_of(cb, b), EdgeKind.ORDER, 1))
            elif Fa == Fb and Sa > Sb:
                closer = any(g.x[fi] == Fa and Sa > g.x[si] > Sb for g in blockers)
                if not closer:
                    edges.add(AttackEdge(arg_of(cb, a), arg_of(cb, b), EdgeKind.ORDER, 2))
    return frozenset(edges)


def stages_framework(cb: Casebase, new_x, new_id: str = "N", modified: bool = False) -> ArgumentationFramework:
    fi, si = stage_layout(cb)
    n = new_case_arg(new_id)
    edges = set(stages_attacks(cb, modified))
    for c in cb.all_cases():
        if not new_x[fi] >= c.x[fi] or new_x[si] < c.x[si]:
            edges.add(AttackEdge(n, arg_of(cb, c), EdgeKind.NEW_CASE))
    return ArgumentationFramework([arg_of(cb, c) for c in cb.all_cases()] + [n], edges)


def stages_predict(cb: Casebase, new_x, new_id: str = "N", modified: bool = False) -> Prediction:
    return _predict(cb, stages_framework(cb, new_x, new_id, modified), new_id)


@dataclass(frozen=True)
class FrameworkDiff:
    equal: bool
    only_in_first: frozenset
    only_in_second: frozenset

    def __bool__(self) -> bool:
        return self.equal


def frameworks_equal(
    af_a: ArgumentationFramework,
    af_b: ArgumentationFramework,
    ignore: Iterable[EdgeKind] = (),
) -> FrameworkDiff:
    """Compare attack relations with labels dropped; edges of kinds in ``ignore`` are skipped."""
    if af_a.arguments != af_b.arguments:
        raise ValueError("frameworks have different argument sets")
    ignore = tuple(ignore)
    pa, pb = af_a.attack_pairs(ignore), af_b.attack_pairs(ignore)
    return FrameworkDiff(pa == pb, pa - pb, pb - pa)


