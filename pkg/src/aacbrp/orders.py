"""Component preorders and their lexicographic use as a preference sequence.

Order indices are 1-based throughout, matching how attack labels are reported.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .model import Characterisation, ComponentKind, ComponentSchema, SchemaError


class Comparison(enum.IntEnum):
    # values double as the codes stored in the kernel comparison tensor
    INCOMPARABLE = 0
    GREATER = 1
    LESS = 2
    EQUIVALENT = 3

    def flip(self) -> "Comparison":
        if self is Comparison.GREATER:
            return Comparison.LESS
        if self is Comparison.LESS:
            return Comparison.GREATER
        return self

    @property
    def geq(self) -> bool:
        return self in (Comparison.GREATER, Comparison.EQUIVALENT)


class Comparator(enum.Enum):
    SUPERSET = "superset"
    LONGER_PREFIX = "longer_prefix"
    GREATER_EQUAL = "greater_equal"


COMPARATOR_FOR_KIND = {
    ComponentKind.FEATURES: Comparator.SUPERSET,
    ComponentKind.STAGES: Comparator.LONGER_PREFIX,
    ComponentKind.INTEGER: Comparator.GREATER_EQUAL,
}


def _from_geq(ab: bool, ba: bool) -> Comparison:
    if ab and ba:
        return Comparison.EQUIVALENT
    if ab:
        return Comparison.GREATER
    if ba:
        return Comparison.LESS
    return Comparison.INCOMPARABLE


@dataclass(frozen=True)
class PreorderSpec:
    component: int
    comparator: Comparator
    name: str = ""

    def compare(self, x: Characterisation, y: Characterisation) -> Comparison:
        a, b = x[self.component], y[self.component]
        if self.comparator is Comparator.SUPERSET:
            if not isinstance(a, frozenset) or not isinstance(b, frozenset):
                raise SchemaError(f"order {self.label} expects feature sets")
            return _from_geq(a >= b, b >= a)
        if isinstance(a, frozenset) or isinstance(b, frozenset):
            raise SchemaError(f"order {self.label} expects integers")
        # stage prefixes are stored as their length, so the prefix order is <= on k
        return _from_geq(a >= b, b >= a)

    @property
    def label(self) -> str:
        return self.name or f"#{self.component}"


@dataclass(frozen=True)
class PreferenceSequence:
    orders: tuple[PreorderSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if not self.orders:
            raise SchemaError("a preference sequence needs at least one order")
        comps = [o.component for o in self.orders]
        if len(set(comps)) != len(comps):
            raise SchemaError("each component may be referenced by at most one order")

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self):
        return iter(self.orders)

    @classmethod
    def over(cls, schema: Sequence[ComponentSchema], names: Sequence[str]) -> "PreferenceSequence":
        """Build the sequence from component names, most preferred first."""
        index = {c.name: i for i, c in enumerate(schema)}
        orders = []
        for name in names:
            if name not in index:
                raise SchemaError(f"preference references unknown component {name!r}")
            comp = schema[index[name]]
            orders.append(PreorderSpec(index[name], COMPARATOR_FOR_KIND[comp.kind], name))
        return cls(tuple(orders))

    def check_schema(self, schema: Sequence[ComponentSchema]) -> None:
        for o in self.orders:
            if not 0 <= o.component < len(schema):
                raise SchemaError(f"order {o.label} points outside the schema")
            if COMPARATOR_FOR_KIND[schema[o.component].kind] is not o.comparator:
                raise SchemaError(
                    f"order {o.label} uses {o.comparator.value} on a {schema[o.component].kind.value} component"
                )

    @property
    def names(self) -> list[str]:
        return [o.label for o in self.orders]


def compare(spec: PreorderSpec, x: Characterisation, y: Characterisation) -> Comparison:
    return spec.compare(x, y)


def compare_all(P: PreferenceSequence, x, y) -> list[Comparison]:
    return [o.compare(x, y) for o in P.orders]


def _check_range(P: PreferenceSequence, j: int, k: int) -> None:
    if j <= k and not (1 <= j and k <= len(P)):
        raise IndexError(f"order range [{j}, {k}] outside 1..{len(P)}")


def geq_range(P: PreferenceSequence, j: int, k: int, x, y) -> bool:
    """``x`` is at least ``y`` on every order j..k (inclusive, 1-based); empty ranges hold."""
    _check_range(P, j, k)
    return all(P.orders[i - 1].compare(x, y).geq for i in range(j, k + 1))


def eq_range(P: PreferenceSequence, j: int, k: int, x, y) -> bool:
    _check_range(P, j, k)
    return all(P.orders[i - 1].compare(x, y) is Comparison.EQUIVALENT for i in range(j, k + 1))


def succ_range(P: PreferenceSequence, j: int, k: int, x, y) -> bool:
    """Strictly greater on every order j..k."""
    _check_range(P, j, k)
    return all(P.orders[i - 1].compare(x, y) is Comparison.GREATER for i in range(j, k + 1))


def all_strict_exists(P: PreferenceSequence, j: int, k: int, x, y) -> bool:
    """At least ``y`` on all orders j..k and strictly greater on one of them."""
    _check_range(P, j, k)
    cmps = [P.orders[i - 1].compare(x, y) for i in range(j, k + 1)]
    return all(c.geq for c in cmps) and any(c is Comparison.GREATER for c in cmps)


def dominates(P: PreferenceSequence, x, y) -> bool:
    return all_strict_exists(P, 1, len(P), x, y)


@dataclass(frozen=True)
class FirstDifference:
    index: int  # 1-based
    result: Comparison  # GREATER, LESS or INCOMPARABLE


def first_strict_order(P: PreferenceSequence, x, y) -> FirstDifference | None:
    """The first order on which ``x`` and ``y`` are not equivalent, or None if they never differ."""
    for i, o in enumerate(P.orders, start=1):
        c = o.compare(x, y)
        if c is not Comparison.EQUIVALENT:
            return FirstDifference(i, c)
    return None
