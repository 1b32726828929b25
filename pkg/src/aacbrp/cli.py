"""Command-line interface: predict, explain, check, eval, gen, bench."""
from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable

from . import kernels
from .engine import AACBRP, Prediction, RegularityError, check_regular, is_coherent
from .evaluation import (
    SyntheticSpec,
    bench_base,
    bench_scaling,
    bench_table,
    constant_default_model,
    evaluate,
    generate_synthetic,
    knn_model,
)
from .io import ParseError, export_framework, parse_casebase, parse_new_cases, serialise_casebase, serialise_new_cases
from .legacy import ProductOrder, UnionSupersetOrder, classic_predict, stages_predict
from .model import Case, Casebase, ComponentKind, Outcome, Polarity, SchemaError, validate_casebase
from .orders import PreferenceSequence

log = logging.getLogger("aacbrp")

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2
VARIANTS = ("aacbrp", "classic", "stages", "stages-modified")


class ValidationFailure(Exception):
    pass


def with_default_outcome(cb: Casebase, name: str | None) -> Casebase:
    """Make ``name`` the default outcome, swapping polarities if needed."""
    if name is None or name == cb.default_outcome.name:
        return cb
    if name != cb.non_default_outcome.name:
        raise ValidationFailure(f"--default-outcome {name!r} is not one of the casebase outcomes")
    d = Outcome(Polarity.DEFAULT, name)
    nd = Outcome(Polarity.NON_DEFAULT, cb.default_outcome.name)
    swap = {cb.default_outcome: nd, cb.non_default_outcome: d}
    cases = tuple(Case(c.id, c.x, swap[c.outcome]) for c in cb.cases)
    return Casebase(cb.schema, cases, Case(cb.default.id, cb.default.x, d), (d, nd))


def classic_order(cb: Casebase, P: PreferenceSequence, kind: str):
    if kind == "union":
        comps = tuple(o.component for o in P.orders if cb.schema[o.component].kind is ComponentKind.FEATURES)
        if len(comps) != len(P):
            raise ValidationFailure("--classic-order union needs every preferred component to be a feature set")
        return UnionSupersetOrder(comps)
    return ProductOrder(P)


def make_predictor(args, cb: Casebase, P: PreferenceSequence) -> Callable[[tuple, str], Prediction]:
    if args.variant == "aacbrp":
        engine = AACBRP(cb, P, args.backend)
        return lambda x, nid: engine.predict(x, nid)
    if args.variant == "classic":
        order = classic_order(cb, P, args.classic_order)
        return lambda x, nid: classic_predict(cb, order, x, nid)
    modified = args.variant == "stages-modified"
    return lambda x, nid: stages_predict(cb, x, nid, modified)


def _load_casebase(args) -> tuple[Casebase, PreferenceSequence]:
    cb, P = parse_casebase(Path(args.casebase).read_text(encoding="utf-8"))
    return with_default_outcome(cb, getattr(args, "default_outcome", None)), P


def _run_predictions(args, cb, P, new_cases) -> list[Prediction]:
    predictor = make_predictor(args, cb, P)
    if args.jobs > 1:
        with ThreadPoolExecutor(args.jobs) as pool:
            return list(pool.map(lambda c: predictor(c.x, c.id), new_cases))
    return [predictor(c.x, c.id) for c in new_cases]


def cmd_predict(args) -> int:
    cb, P = _load_casebase(args)
    new_cases = parse_new_cases(Path(args.new_cases).read_text(encoding="utf-8"), cb.schema)
    for case, pred in zip(new_cases, _run_predictions(args, cb, P, new_cases)):
        print(f"{case.id}\t{pred.outcome.name}")
    return EXIT_OK


def cmd_explain(args) -> int:
    cb, P = _load_casebase(args)
    new_cases = parse_new_cases(Path(args.new_cases).read_text(encoding="utf-8"), cb.schema)
    engine = AACBRP(cb, P, args.backend) if args.variant == "aacbrp" else None
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    for case, pred in zip(new_cases, _run_predictions(args, cb, P, new_cases)):
        print(f"== {case.id}: {pred.outcome.name}")
        for i, layer in enumerate(pred.grounded.layers):
            print(f"G{i}: " + " ".join(sorted(a.name for a in layer)))
        if engine is not None:
            print("nearest: " + " ".join(c.id for c in engine.nearest_cases(case.x)))
            print("preferred: " + " ".join(c.id for c in engine.preferred_cases(case.x)))
        text = export_framework(pred.framework, args.format, pred.grounded.grounded)
        if out_dir:
            suffix = "dot" if args.format == "dot" else "txt"
            (out_dir / f"{case.id}.{suffix}").write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    cb, P = _load_casebase(args)
    problems = validate_casebase(cb) + check_regular(cb, P)
    coherent, clashes = is_coherent(cb, P)
    for p in problems:
        print(f"error: {p}")
    for a, b in clashes:
        print(f"warning: incoherent pair {a} {b}")
    print(f"cases={len(cb.cases)} orders={len(P)} coherent={'yes' if coherent else 'no'} "
          f"regular={'no' if problems else 'yes'}")
    if problems or (args.strict and not coherent):
        return EXIT_INVALID
    return EXIT_OK


def cmd_eval(args) -> int:
    cb, P = _load_casebase(args)
    test = parse_new_cases(Path(args.test).read_text(encoding="utf-8"), cb.schema)
    names = {o.name for o in cb.outcomes}
    for c in test:
        if c.outcome not in names:
            raise ValidationFailure(f"test case {c.id}: outcome {c.outcome!r} is missing or unknown")
    positive = args.positive or cb.default_outcome.name
    if positive not in names:
        raise ValidationFailure(f"--positive {positive!r} is not one of the casebase outcomes")
    if args.model == "knn":
        factory = knn_model(args.k)
    elif args.model == "constant":
        factory = constant_default_model
    else:
        def factory(train):
            predictor = make_predictor(args, train, P)
            return lambda x: predictor(x, "N").outcome.name
    report = evaluate(factory, cb, test, positive, jobs=args.jobs)
    title = args.model if args.model != "argumentation" else args.variant
    if args.report in ("table", "both"):
        sys.stdout.write(report.table(title))
    if args.report in ("kv", "both"):
        sys.stdout.write(report.key_values())
    return EXIT_OK


def cmd_gen(args) -> int:
    spec = SyntheticSpec(
        n_cases=args.cases, n_test=args.test, noise=args.noise, seed=args.seed, stages=args.stages
    )
    data = generate_synthetic(spec)
    Path(args.out).write_text(serialise_casebase(data.casebase, data.preferences), encoding="utf-8")
    if args.test_out:
        Path(args.test_out).write_text(serialise_new_cases(data.casebase.schema, data.test), encoding="utf-8")
    if not data.coherent:
        print(f"warning: noise produced {len(data.clashes)} incoherent pair(s)", file=sys.stderr)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.casebase:
        base, _ = _load_casebase(args)
    else:
        base = bench_base(args.cases, args.seed)
    m_values = [int(v) for v in args.m.split(",")]
    backends = sorted(kernels.BACKENDS) if args.backend == "all" else [args.backend]
    for be in backends:
        rows = bench_scaling(base, m_values, repeats=args.repeats, backend=be)
        print(f"# backend={be or kernels.BACKEND} cases={len(base.cases)}")
        sys.stdout.write(bench_table(rows))
    return EXIT_OK


def _common(p: argparse.ArgumentParser, new_cases: bool = True) -> None:
    p.add_argument("casebase", help="casebase document (JSON)")
    if new_cases:
        p.add_argument("new_cases", help="new-cases document (JSON)")
    p.add_argument("--variant", choices=VARIANTS, default="aacbrp")
    p.add_argument("--classic-order", choices=("product", "union"), default="product",
                   help="order fed to the classic variant")
    p.add_argument("--default-outcome", metavar="NAME")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aacbrp", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="predict outcomes for new cases")
    _common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("explain", help="predict and export the argumentation framework")
    _common(p)
    p.add_argument("--format", choices=("dot", "edges"), default="edges")
    p.add_argument("--out-dir", help="write one file per new case instead of stdout")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("check", help="validation, coherence and regularity diagnostics")
    p.add_argument("casebase")
    p.add_argument("--default-outcome", metavar="NAME")
    p.add_argument("--strict", action="store_true", help="treat incoherence as a failure")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate on a labelled test file")
    _common(p, new_cases=False)
    p.add_argument("test", help="labelled test cases (new-cases document with outcomes)")
    p.add_argument("--model", choices=("argumentation", "knn", "constant"), default="argumentation")
    p.add_argument("-k", type=int, default=3, help="neighbours for --model knn")
    p.add_argument("--positive", metavar="NAME", help="positive class (default: the default outcome)")
    p.add_argument("--report", choices=("table", "kv", "both"), default="both")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="generate a synthetic casebase")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=60)
    p.add_argument("--test", type=int, default=50)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--stages", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--test-out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time framework construction against the number of orders")
    p.add_argument("casebase", nargs="?")
    p.add_argument("--default-outcome", metavar="NAME")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", default="1,2,3,4")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--backend", choices=sorted(kernels.BACKENDS) + ["all"], default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ParseError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationFailure, SchemaError, RegularityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
