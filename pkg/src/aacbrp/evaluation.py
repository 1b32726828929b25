"""Metrics, the kNN baseline, synthetic data and the order-count scaling benchmark."""
from __future__ import annotations

import random
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .engine import AACBRP, is_coherent
from .io import LabelledCase
from .legacy import Order, classic_predict, stages_predict
from .model import Case, Casebase, ComponentKind, ComponentSchema, Outcome, Polarity
from .orders import PreferenceSequence

PA_FEATURES = ("slI", "slD", "sbI", "sbD", "ltI", "ltD", "maI", "maD", "waI", "waD")
PRO_FEATURES = ("faI", "faD", "qlI", "qlD", "pfI", "pfD", "fuI", "fuD", "mdI", "mdD")

# a fitted model maps a characterisation to an outcome name
Model = Callable[[tuple], str]
ModelFactory = Callable[[Casebase], Model]


@dataclass(frozen=True)
class EvaluationReport:
    tp: int
    fp: int
    fn: int
    tn: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    positive: str
    undefined: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def as_dict(self) -> dict:
        return {
            "positive": self.positive,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "tn": self.tn,
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "undefined": ",".join(self.undefined) or "none",
        }

    def key_values(self) -> str:
        lines = []
        for k, v in self.as_dict().items():
            lines.append(f"{k}={v:.4f}" if isinstance(v, float) else f"{k}={v}")
        return "\n".join(lines) + "\n"

    def table(self, title: str = "") -> str:
        rows = [title] if title else []
        rows.append(f"{'accuracy':<10} {'precision':<10} {'recall':<10} {'f1':<10}")
        rows.append(f"{self.accuracy:<10.2f} {self.precision:<10.2f} {self.recall:<10.2f} {self.f1:<10.2f}")
        rows.append(f"tp={self.tp} fp={self.fp} fn={self.fn} tn={self.tn} (positive: {self.positive})")
        if self.undefined:
            rows.append("undefined (reported as 0): " + ", ".join(self.undefined))
        return "\n".join(rows) + "\n"


def metrics_from_confusion(tp: int, fp: int, fn: int, tn: int, positive: str = "positive") -> EvaluationReport:
    """Standard binary metrics; a zero denominator yields 0.0 and is listed in ``undefined``."""
    if min(tp, fp, fn, tn) < 0:
        raise ValueError("confusion counts must be non-negative")
    total = tp + fp + fn + tn
    if total == 0:
        raise ValueError("no test cases")
    undefined = []
    precision = tp / (tp + fp) if tp + fp else 0.0
    if not tp + fp:
        undefined.append("precision")
    recall = tp / (tp + fn) if tp + fn else 0.0
    if not tp + fn:
        undefined.append("recall")
    if precision + recall:
        f1 = 2 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
        undefined.append("f1")
    return EvaluationReport(tp, fp, fn, tn, (tp + tn) / total, precision, recall, f1, positive, tuple(undefined))


def confusion(truth: Sequence[str], predicted: Sequence[str], positive: str) -> tuple[int, int, int, int]:
    tp = fp = fn = tn = 0
    for t, p in zip(truth, predicted, strict=True):
        if p == positive:
            if t == positive:
                tp += 1
            else:
                fp += 1
        elif t == positive:
            fn += 1
        else:
            tn += 1
    return tp, fp, fn, tn


def evaluate(
    model: ModelFactory,
    train: Casebase,
    test: Sequence[LabelledCase],
    positive: str,
    jobs: int = 1,
) -> EvaluationReport:
    unlabelled = [c.id for c in test if c.outcome is None]
    if unlabelled:
        raise ValueError(f"test cases without an outcome: {', '.join(unlabelled)}")
    fitted = model(train)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(jobs) as pool:
            predicted = list(pool.map(lambda c: fitted(c.x), test))
    else:
        predicted = [fitted(c.x) for c in test]
    return metrics_from_confusion(*confusion([c.outcome for c in test], predicted, positive), positive)


# models -------------------------------------------------------------------


def aacbrp_model(P: PreferenceSequence, backend: str | None = None) -> ModelFactory:
    def fit(train: Casebase) -> Model:
        engine = AACBRP(train, P, backend)
        return lambda x: engine.predict(x).outcome.name

    return fit


def classic_model(order: Order) -> ModelFactory:
    def fit(train: Casebase) -> Model:
        return lambda x: classic_predict(train, order, x).outcome.name

    return fit


def stages_model(modified: bool = False) -> ModelFactory:
    def fit(train: Casebase) -> Model:
        return lambda x: stages_predict(train, x, modified=modified).outcome.name

    return fit


def constant_default_model(train: Casebase) -> Model:
    name = train.default_outcome.name
    return lambda x: name


def knn_model(k: int = 3) -> ModelFactory:
    def fit(train: Casebase) -> Model:
        return lambda x: knn_predict(train, x, k)

    return fit


# kNN baseline -------------------------------------------------------------


def binary_vocabulary(cb: Casebase) -> list[tuple[int, object]]:
    """Vector slots as (component, feature or stage value), in schema order.

    Feature slots come from the casebase vocabulary; stage components are
    one-hot over 0..max_stage. Integer components have no binary encoding
    and are left out.
    """
    slots = []
    for i, comp in enumerate(cb.schema):
        if comp.kind is ComponentKind.FEATURES:
            vocab = sorted(set().union(*(c.x[i] for c in cb.cases)) if cb.cases else ())
            slots.extend((i, f) for f in vocab)
        elif comp.kind is ComponentKind.STAGES:
            slots.extend((i, s) for s in range(comp.max_stage + 1))
    return slots


def vectorise(cb: Casebase, x, slots=None) -> tuple[int, ...]:
    slots = binary_vocabulary(cb) if slots is None else slots
    out = []
    for i, v in slots:
        val = x[i]
        out.append(int(v in val) if isinstance(val, frozenset) else int(val == v))
    return tuple(out)


def hamming(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(u, v, strict=True))


def knn_predict(train: Casebase, x, k: int = 3) -> str:
    """Majority outcome of the k nearest training cases by Hamming distance.

    Distance ties are admitted in ascending case-id order; a tied vote goes
    to the outcome of the closest admitted case. Query features unseen in
    training shift every distance equally and are ignored.
    """
    if not train.cases:
        return train.default_outcome.name
    slots = binary_vocabulary(train)
    q = vectorise(train, x, slots)
    ranked = sorted(train.cases, key=lambda c: (hamming(q, vectorise(train, c.x, slots)), c.id))
    chosen = ranked[:k]
    votes = Counter(c.outcome.name for c in chosen)
    best = max(votes.values())
    for c in chosen:
        if votes[c.outcome.name] == best:
            return c.outcome.name
    raise AssertionError("unreachable")


# synthetic data -----------------------------------------------------------


@dataclass(frozen=True)
class SyntheticSpec:
    n_cases: int = 60
    n_test: int = 50
    noise: float = 0.0
    seed: int = 0
    stages: bool = False
    max_stage: int = 3
    feature_rate: float = 0.25
    signal_size: int = 3
    default_outcome: str = "pd"
    non_default_outcome: str = "sd"


@dataclass(frozen=True)
class SyntheticData:
    casebase: Casebase
    preferences: PreferenceSequence
    test: list[LabelledCase]
    signal: frozenset
    coherent: bool
    clashes: list = field(default_factory=list)


def generate_synthetic(spec: SyntheticSpec) -> SyntheticData:
    """Draw cases with two feature tiers (pa, pro) and an optional stage component.

    The outcome is non-default iff the PA tier meets a planted signal set;
    each label is then flipped with probability ``noise``.
    """
    rng = random.Random(spec.seed)
    signal = frozenset(rng.sample(PA_FEATURES, spec.signal_size))
    schema = [ComponentSchema("pa", ComponentKind.FEATURES), ComponentSchema("pro", ComponentKind.FEATURES)]
    if spec.stages:
        schema.append(ComponentSchema("pd", ComponentKind.STAGES, spec.max_stage))
    d = Outcome(Polarity.DEFAULT, spec.default_outcome)
    nd = Outcome(Polarity.NON_DEFAULT, spec.non_default_outcome)

    def draw(prefix: str, i: int) -> Case:
        pa = frozenset(f for f in PA_FEATURES if rng.random() < spec.feature_rate)
        pro = frozenset(f for f in PRO_FEATURES if rng.random() < spec.feature_rate)
        x = (pa, pro) + ((rng.randint(0, spec.max_stage),) if spec.stages else ())
        y = nd if pa & signal else d
        if rng.random() < spec.noise:
            y = d if y is nd else nd
        return Case(f"{prefix}{i}", x, y)

    cases = tuple(draw("c", i + 1) for i in range(spec.n_cases))
    test = [draw("t", i + 1) for i in range(spec.n_test)]
    default = Case("default", (frozenset(), frozenset()) + ((0,) if spec.stages else ()), d)
    cb = Casebase(tuple(schema), cases, default, (d, nd))
    P = PreferenceSequence.over(cb.schema, [c.name for c in cb.schema])
    ok, clashes = is_coherent(cb, P)
    return SyntheticData(
        cb,
        P,
        [LabelledCase(c.id, c.x, c.outcome.name) for c in test],
        signal,
        ok,
        clashes,
    )


# scaling benchmark --------------------------------------------------------


@dataclass(frozen=True)
class BenchRow:
    m: int
    seconds: float
    attacks: int
    runs: tuple[float, ...]


def replicate_tiers(cb: Casebase, m: int) -> tuple[Casebase, PreferenceSequence]:
    """Copy every component ``m`` times and prefer the copies in order."""
    schema = tuple(
        ComponentSchema(f"{c.name}{r}", c.kind, c.max_stage) for r in range(1, m + 1) for c in cb.schema
    )
    def widen(case: Case) -> Case:
        return Case(case.id, case.x * m, case.outcome)

    wide = Casebase(schema, tuple(widen(c) for c in cb.cases), widen(cb.default), cb.outcomes)
    return wide, PreferenceSequence.over(schema, [c.name for c in schema])


def bench_base(n_cases: int = 200, seed: int = 0) -> Casebase:
    """A one-component synthetic casebase (the pa tier only) for scaling runs."""
    cb = generate_synthetic(SyntheticSpec(n_cases=n_cases, n_test=0, seed=seed)).casebase

    def first(case: Case) -> Case:
        return Case(case.id, case.x[:1], case.outcome)

    return Casebase(cb.schema[:1], tuple(first(c) for c in cb.cases), first(cb.default), cb.outcomes)


def bench_scaling(
    base: Casebase,
    m_values: Sequence[int],
    repeats: int = 5,
    backend: str | None = None,
    new_x=None,
) -> list[BenchRow]:
    """Median wall time of building the framework for each number of orders ``m``."""
    rows = []
    for m in m_values:
        cb, P = replicate_tiers(base, m)
        query = (new_x if new_x is not None else cb.default.x[: len(base.schema)]) * m
        runs = []
        attacks = 0
        for _ in range(repeats):
            t0 = time.perf_counter()
            af = AACBRP(cb, P, backend).framework(query)
            runs.append(time.perf_counter() - t0)
            attacks = len(af.attacks)
        rows.append(BenchRow(m, statistics.median(runs), attacks, tuple(runs)))
    return rows


def bench_table(rows: Sequence[BenchRow]) -> str:
    lines = ["m\tseconds\tattacks"]
    lines += [f"{r.m}\t{r.seconds:.6f}\t{r.attacks}" for r in rows]
    return "\n".join(lines) + "\n"
