"""Regular AA-CBR with a preference sequence of preorders.

Arguments are mined from a casebase: attacks go from a case to one with a
different outcome that it strictly exceeds on the first order where the two
differ, unless a more concise case of the attacker's outcome can take its
place. The new case attacks every case it fails to dominate on some order,
and the default outcome is predicted iff the default argument is in the
grounded extension.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .af import (
    ArgumentationFramework,
    ArgumentRef,
    AttackEdge,
    EdgeKind,
    GroundedResult,
    case_arg,
    default_arg,
    grounded_extension,
    new_case_arg,
)
from .model import (
    Case,
    Casebase,
    Characterisation,
    Outcome,
    Polarity,
    SchemaError,
    check_characterisation,
    validate_casebase,
)
from .orders import (
    Comparison,
    PreferenceSequence,
    eq_range,
    first_strict_order,
    geq_range,
)


class RegularityError(ValueError):
    """The default characterisation is not the least element on every order."""


@dataclass(frozen=True)
class EngineConfig:
    preferences: PreferenceSequence
    regular: bool = True
    default_outcome_name: str | None = None

    def __post_init__(self):
        if not self.regular:
            raise ValueError("only the regular variant is supported")


@dataclass(frozen=True)
class Prediction:
    outcome: Outcome
    framework: ArgumentationFramework
    grounded: GroundedResult
    new_case: ArgumentRef
    default: ArgumentRef

    @property
    def is_default(self) -> bool:
        return self.outcome.polarity is Polarity.DEFAULT


def arg_of(cb: Casebase, case: Case) -> ArgumentRef:
    if case is cb.default or case.id == cb.default.id:
        return default_arg(cb.default.id)
    return case_arg(case.id)


def comparison_tensor(P: PreferenceSequence, xs: Sequence[Characterisation]) -> np.ndarray:
    """Codes of ``compare(order_k, xs[a], xs[b])`` as an int8 array of shape (n, m, m)."""
    m = len(xs)
    out = np.empty((len(P), m, m), dtype=np.int8)
    for k, spec in enumerate(P.orders):
        col = [x[spec.component] for x in xs]
        if m and isinstance(col[0], frozenset):
            vocab = {f: j for j, f in enumerate(sorted(set().union(*col)))}
            M = np.zeros((m, len(vocab)), dtype=np.int32)
            for a, fs in enumerate(col):
                M[a, [vocab[f] for f in fs]] = 1
            missing = (1 - M) @ M.T  # missing[a, b]: features of b absent from a
            geq = missing == 0
        else:
            v = np.asarray(col, dtype=np.int64)
            geq = v[:, None] >= v[None, :]
        leq = geq.T
        out[k] = np.where(
            geq & leq,
            Comparison.EQUIVALENT,
            np.where(geq, Comparison.GREATER, np.where(leq, Comparison.LESS, Comparison.INCOMPARABLE)),
        )
    return out


def _outcome_codes(cases: Sequence[Case]) -> np.ndarray:
    return np.array([0 if c.outcome.polarity is Polarity.DEFAULT else 1 for c in cases], dtype=np.int8)


def potential_attack_order(P: PreferenceSequence, a: Case, b: Case) -> int | None:
    """The order on which ``a`` potentially attacks ``b``, if any (1-based)."""
    if a.outcome == b.outcome:
        return None
    first = first_strict_order(P, a.x, b.x)
    if first is not None and first.result is Comparison.GREATER:
        return first.index
    return None


def check_regular(cb: Casebase, P: PreferenceSequence) -> list[str]:
    """Diagnostics for every case the default is not below, per order."""
    problems = []
    for case in cb.cases:
        for i, spec in enumerate(P.orders, start=1):
            if not spec.compare(case.x, cb.default.x).geq:
                problems.append(
                    f"{case.id}: default {cb.default.id} is not below it on order {i} ({spec.label})"
                )
    return problems


def is_coherent(cb: Casebase, P: PreferenceSequence) -> tuple[bool, list[tuple[str, str]]]:
    cases = cb.all_cases()
    clashes = []
    for i, a in enumerate(cases):
        for b in cases[i + 1:]:
            if a.outcome != b.outcome and eq_range(P, 1, len(P), a.x, b.x):
                clashes.append((a.id, b.id))
    return (not clashes, clashes)


def _irrelevant(P: PreferenceSequence, new_x, x) -> bool:
    return any(not spec.compare(new_x, x).geq for spec in P.orders)


class AACBRP:
    """A casebase with its mined (new-case independent) attacks.

    Mining happens once at construction; ``framework`` and ``predict`` only
    add the new case's attacks on top.
    """

    def __init__(self, cb: Casebase, preferences: PreferenceSequence | EngineConfig, backend: str | None = None):
        if isinstance(preferences, EngineConfig):
            preferences = preferences.preferences
        problems = validate_casebase(cb)
        if problems:
            raise SchemaError("; ".join(problems))
        preferences.check_schema(cb.schema)
        irregular = check_regular(cb, preferences)
        if irregular:
            raise RegularityError("; ".join(irregular))
        self.casebase = cb
        self.preferences = preferences
        self.backend = backend
        self.cases = cb.all_cases()
        self.refs = [arg_of(cb, c) for c in self.cases]
        self.default_ref = self.refs[0]
        self.order_attacks = frozenset(self._mine())
        self.incoherent_attacks = frozenset(self._incoherent())

    def _mine(self):
        if len(self.cases) < 2:
            return []
        cmp = comparison_tensor(self.preferences, [c.x for c in self.cases])
        self._cmp = cmp
        src, dst, order = kernels.mine_attacks(cmp, _outcome_codes(self.cases), self.backend)
        refs = self.refs
        return [
            AttackEdge(refs[a], refs[b], EdgeKind.ORDER, int(i))
            for a, b, i in zip(src.tolist(), dst.tolist(), order.tolist())
        ]

    def _incoherent(self):
        if len(self.cases) < 2:
            return []
        cmp = getattr(self, "_cmp", None)
        if cmp is None:
            cmp = comparison_tensor(self.preferences, [c.x for c in self.cases])
        codes = _outcome_codes(self.cases)
        all_eq = (cmp == Comparison.EQUIVALENT).all(axis=0) & (codes[:, None] != codes[None, :])
        a_idx, b_idx = np.nonzero(all_eq)
        return [
            AttackEdge(self.refs[a], self.refs[b], EdgeKind.INCOHERENT)
            for a, b in zip(a_idx.tolist(), b_idx.tolist())
        ]

    def new_case_attacks(self, new_x: Characterisation, new_id: str = "N") -> frozenset[AttackEdge]:
        problems = check_characterisation(self.casebase.schema, new_x)
        if problems:
            raise SchemaError(f"{new_id}: " + "; ".join(problems))
        n = new_case_arg(new_id)
        return frozenset(
            AttackEdge(n, ref, EdgeKind.NEW_CASE)
            for ref, case in zip(self.refs, self.cases)
            if _irrelevant(self.preferences, new_x, case.x)
        )

    def framework(self, new_x: Characterisation, new_id: str = "N") -> ArgumentationFramework:
        if any(r.name == new_id for r in self.refs):
            raise SchemaError(f"new case id {new_id!r} clashes with a casebase id")
        args = list(self.refs) + [new_case_arg(new_id)]
        edges = self.order_attacks | self.incoherent_attacks | self.new_case_attacks(new_x, new_id)
        return ArgumentationFramework(args, edges)

    def predict(self, new_x: Characterisation, new_id: str = "N") -> Prediction:
        af = self.framework(new_x, new_id)
        g = grounded_extension(af)
        cb = self.casebase
        outcome = cb.default_outcome if self.default_ref in g else cb.non_default_outcome
        return Prediction(outcome, af, g, new_case_arg(new_id), self.default_ref)

    def nearest_cases(self, new_x: Characterisation) -> list[Case]:
        return nearest_cases(self.casebase, self.preferences, new_x)

    def preferred_cases(self, new_x: Characterisation) -> list[Case]:
        return preferred_cases(self.casebase, self.preferences, new_x)


def casebase_attacks(cb: Casebase, P: PreferenceSequence, backend: str | None = None) -> frozenset[AttackEdge]:
    return AACBRP(cb, P, backend).order_attacks


def incoherent_attacks(cb: Casebase, P: PreferenceSequence) -> frozenset[AttackEdge]:
    return AACBRP(cb, P).incoherent_attacks


def new_case_attacks(cb: Casebase, P: PreferenceSequence, new_x, new_id: str = "N") -> frozenset[AttackEdge]:
    return frozenset(
        AttackEdge(new_case_arg(new_id), arg_of(cb, c), EdgeKind.NEW_CASE)
        for c in cb.all_cases()
        if _irrelevant(P, new_x, c.x)
    )


def build_framework(cb: Casebase, P: PreferenceSequence, new_x, new_id: str = "N", backend: str | None = None):
    return AACBRP(cb, P, backend).framework(new_x, new_id)


def predict(cb: Casebase, P: PreferenceSequence, new_x, new_id: str = "N", backend: str | None = None) -> Prediction:
    return AACBRP(cb, P, backend).predict(new_x, new_id)


def nearest_cases(cb: Casebase, P: PreferenceSequence, new_x) -> list[Case]:
    """Cases below the new case on every order and maximal among those."""
    n = len(P)
    below = [c for c in cb.all_cases() if geq_range(P, 1, n, new_x, c.x)]
    rivals = [c for c in below if c is not cb.default]
    out = []
    for a in below:
        beaten = any(
            geq_range(P, 1, n, b.x, a.x)
            and any(spec.compare(b.x, a.x) is Comparison.GREATER for spec in P.orders)
            for b in rivals
        )
        if not beaten:
            out.append(a)
    return out


def preferred_cases(cb: Casebase, P: PreferenceSequence, new_x) -> list[Case]:
    """Nearest cases not beaten by another nearest case on the first order where they differ."""
    nearest = nearest_cases(cb, P, new_x)
    out = []
    for a in nearest:
        beaten = False
        for b in nearest:
            if b is a:
                continue
            first = first_strict_order(P, b.x, a.x)
            if first is not None and first.result is Comparison.GREATER:
                beaten = True
                break
        if not beaten:
            out.append(a)
    return out

