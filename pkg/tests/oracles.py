"""Independent reference implementations used only by the tests.

Everything here works on raw characterisation tuples with Python set and
integer comparisons and follows the definitions literally (quantifiers
become loops). None of it calls the package's order or mining code.
"""
from __future__ import annotations

import random

import networkx as nx

from aacbrp.model import Case, Casebase, ComponentKind, ComponentSchema, Outcome, Polarity
from aacbrp.orders import PreferenceSequence

KINDS = (ComponentKind.FEATURES, ComponentKind.STAGES, ComponentKind.INTEGER)


# --- literal order semantics -------------------------------------------------

def ge(P, i, x, y) -> bool:
    """x >=_i y for 1-based order index i."""
    c = P.orders[i - 1].component
    return x[c] >= y[c]  # superset for frozensets, numeric >= otherwise


def gt(P, i, x, y) -> bool:
    return ge(P, i, x, y) and not ge(P, i, y, x)


def eq(P, i, x, y) -> bool:
    return ge(P, i, x, y) and ge(P, i, y, x)


def big_ge(P, j, k, x, y) -> bool:
    return all(ge(P, i, x, y) for i in range(j, k + 1))


def big_eq(P, j, k, x, y) -> bool:
    return all(eq(P, i, x, y) for i in range(j, k + 1))


# --- literal attack definitions ----------------------------------------------

def potential(P, a: Case, b: Case, i: int) -> bool:
    return a.outcome != b.outcome and gt(P, i, a.x, b.x) and big_eq(P, 1, i - 1, a.x, b.x)


def attacks_on_order(P, args, a: Case, b: Case, i: int) -> bool:
    n = len(P)
    if not potential(P, a, b, i):
        return False
    for g in args:
        if g.outcome != a.outcome or not big_ge(P, 1, n, a.x, g.x):
            continue
        clause_a = potential(P, g, b, i) and any(gt(P, l, a.x, g.x) for l in range(i, n + 1))
        clause_b = not potential(P, g, b, i) and any(potential(P, g, b, l) for l in range(i + 1, n + 1))
        if clause_a or clause_b:
            return False
    return True


def oracle_order_attacks(cb: Casebase, P) -> set[tuple[str, str, int]]:
    args = cb.all_cases()
    out = set()
    for a in args:
        for b in args:
            for i in range(1, len(P) + 1):
                if attacks_on_order(P, args, a, b, i):
                    out.add((a.id, b.id, i))
    return out


def oracle_blocked_only_by_dominated(cb: Casebase, P) -> bool:
    """Every potential attack that is not an attack has a blocker the attacker dominates on all orders."""
    args = cb.all_cases()
    n = len(P)
    for a in args:
        for b in args:
            for i in range(1, n + 1):
                if potential(P, a, b, i) and not attacks_on_order(P, args, a, b, i):
                    witnesses = [g for g in args if g.outcome == a.outcome and big_ge(P, 1, n, a.x, g.x)]
                    if not witnesses:
                        return False
    return True


def oracle_new_case_targets(cb: Casebase, P, new_x) -> set[str]:
    return {c.id for c in cb.all_cases() if any(not ge(P, i, new_x, c.x) for i in range(1, len(P) + 1))}


# --- literal grounded semantics ----------------------------------------------

def brute_grounded(arguments, pairs) -> frozenset:
    """Least fixpoint of the characteristic function, iterated from the empty set."""
    arguments = list(arguments)
    pairs = set(pairs)

    def defends(E, b):
        return all(any((g, a) in pairs for g in E) for a in arguments if (a, b) in pairs)

    E = frozenset()
    while True:
        nxt = frozenset(b for b in arguments if defends(E, b))
        if nxt == E:
            return E
        E = nxt


def has_cycle(arguments, pairs) -> bool:
    g = nx.DiGraph()
    g.add_nodes_from(arguments)
    g.add_edges_from(pairs)
    return not nx.is_directed_acyclic_graph(g)


# --- random inputs -------------------------------------------------------------

FEATURES = ("a", "b", "c")


def random_value(rng: random.Random, comp: ComponentSchema):
    if comp.kind is ComponentKind.FEATURES:
        return frozenset(f for f in FEATURES if rng.random() < 0.45)
    if comp.kind is ComponentKind.STAGES:
        return rng.randint(0, comp.max_stage)
    return rng.randint(0, 3)


def random_schema(rng: random.Random, n_components: int, kinds=KINDS) -> tuple[ComponentSchema, ...]:
    out = []
    for i in range(n_components):
        kind = rng.choice(kinds)
        out.append(ComponentSchema(f"k{i}", kind, 3 if kind is ComponentKind.STAGES else None))
    return tuple(out)


def random_casebase(
    rng: random.Random,
    max_cases: int = 12,
    n_orders: int | None = None,
    schema=None,
    coherent: bool = True,
    min_cases: int = 0,
) -> tuple[Casebase, PreferenceSequence]:
    if schema is None:
        schema = random_schema(rng, n_orders if n_orders is not None else rng.choice((2, 3)))
    names = [c.name for c in schema]
    rng.shuffle(names)
    P = PreferenceSequence.over(schema, names)
    d = Outcome(Polarity.DEFAULT, "-")
    nd = Outcome(Polarity.NON_DEFAULT, "+")
    default_x = tuple(
        0 if c.kind is not ComponentKind.FEATURES else frozenset() for c in schema
    )
    label_of = {default_x: d}
    cases = []
    for i in range(rng.randint(min_cases, max_cases)):
        x = tuple(random_value(rng, c) for c in schema)
        y = rng.choice((d, nd))
        if coherent:
            # each order is antisymmetric on its component, so equivalence on all orders is identity
            y = label_of.setdefault(x, y)
        cases.append(Case(f"C{i + 1}", x, y))
    return Casebase(schema, tuple(cases), Case("C0", default_x, d), (d, nd)), P


def random_new_case(rng: random.Random, cb: Casebase) -> tuple:
    return tuple(random_value(rng, c) for c in cb.schema)


# --- literal nearest / preferred cases ---------------------------------------

def oracle_nearest(cb: Casebase, P, new_x) -> list[Case]:
    n = len(P)
    below = [c for c in cb.all_cases() if big_ge(P, 1, n, new_x, c.x)]
    rivals = [c for c in below if c is not cb.default]

    def beats(b, a):
        return big_ge(P, 1, n, b.x, a.x) and any(gt(P, i, b.x, a.x) for i in range(1, n + 1))

    return [a for a in below if not any(beats(b, a) for b in rivals)]


def oracle_preferred(cb: Casebase, P, new_x) -> list[Case]:
    nearest = oracle_nearest(cb, P, new_x)
    n = len(P)

    def beats(b, a):
        for i in range(1, n + 1):
            if not eq(P, i, b.x, a.x):
                return gt(P, i, b.x, a.x)
        return False

    return [a for a in nearest if not any(beats(b, a) for b in nearest if b is not a)]
