"""Abstract argumentation frameworks and grounded semantics."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable


class ArgKind(enum.IntEnum):
    # sort order used for deterministic output: new case, cases, default
    NEW_CASE = 0
    CASE = 1
    DEFAULT = 2


@dataclass(frozen=True, order=True)
class ArgumentRef:
    kind: ArgKind
    name: str

    def __str__(self) -> str:
        return self.name


def case_arg(name: str) -> ArgumentRef:
    return ArgumentRef(ArgKind.CASE, name)


def default_arg(name: str = "default") -> ArgumentRef:
    return ArgumentRef(ArgKind.DEFAULT, name)


def new_case_arg(name: str = "N") -> ArgumentRef:
    return ArgumentRef(ArgKind.NEW_CASE, name)


class EdgeKind(enum.Enum):
    ORDER = "order"
    INCOHERENT = "incoherent"
    NEW_CASE = "new_case"


@dataclass(frozen=True)
class AttackEdge:
    attacker: ArgumentRef
    target: ArgumentRef
    kind: EdgeKind = EdgeKind.ORDER
    order: int | None = None

    def __post_init__(self):
        if (self.kind is EdgeKind.ORDER) != (self.order is not None):
            raise ValueError("order index is required exactly for ORDER edges")

    @property
    def label(self) -> str:
        if self.kind is EdgeKind.ORDER:
            return str(self.order)
        return "inc" if self.kind is EdgeKind.INCOHERENT else "new"

    @property
    def pair(self) -> tuple[ArgumentRef, ArgumentRef]:
        return (self.attacker, self.target)

    def key(self):
        return (self.attacker, self.target, self.kind.value, self.order or 0)


class ArgumentationFramework:
    """An immutable set of arguments with labelled attacks between them."""

    def __init__(self, arguments: Iterable[ArgumentRef], attacks: Iterable[AttackEdge] = ()):
        self.arguments = frozenset(arguments)
        self.attacks = frozenset(attacks)
        for e in self.attacks:
            if e.attacker not in self.arguments or e.target not in self.arguments:
                raise ValueError(f"edge {e.attacker} -> {e.target} has an endpoint outside the framework")
        self._attackers: dict[ArgumentRef, set[ArgumentRef]] = {a: set() for a in self.arguments}
        self._targets: dict[ArgumentRef, set[ArgumentRef]] = {a: set() for a in self.arguments}
        for e in self.attacks:
            self._attackers[e.target].add(e.attacker)
            self._targets[e.attacker].add(e.target)

    def attackers(self, a: ArgumentRef) -> frozenset[ArgumentRef]:
        return frozenset(self._attackers[a])

    def targets(self, a: ArgumentRef) -> frozenset[ArgumentRef]:
        return frozenset(self._targets[a])

    def sorted_arguments(self) -> list[ArgumentRef]:
        return sorted(self.arguments)

    def sorted_attacks(self) -> list[AttackEdge]:
        return sorted(self.attacks, key=AttackEdge.key)

    def attack_pairs(self, ignore: Iterable[EdgeKind] = ()) -> frozenset:
        ignore = set(ignore)
        return frozenset(e.pair for e in self.attacks if e.kind not in ignore)

    def __repr__(self) -> str:
        return f"ArgumentationFramework({len(self.arguments)} arguments, {len(self.attacks)} attacks)"


@dataclass(frozen=True)
class GroundedResult:
    layers: tuple[frozenset, ...]
    grounded: frozenset

    def __contains__(self, arg) -> bool:
        return arg in self.grounded

    def in_grounded(self, arg: ArgumentRef) -> bool:
        return arg in self.grounded


def grounded_extension(af: ArgumentationFramework) -> GroundedResult:
    """Compute G_0 (unattacked) and G_{i+1} = args defended by G_i until the fixpoint."""
    layers = []
    current: frozenset = frozenset()
    while True:
        beaten = set()
        for a in current:
            beaten.update(af._targets[a])
        nxt = frozenset(
            a for a in af.sorted_arguments() if af._attackers[a] <= beaten
        )
        if layers and nxt == current:
            break
        layers.append(nxt)
        current = nxt
    return GroundedResult(tuple(layers), current)


def is_acyclic(af: ArgumentationFramework, ignore: Iterable[EdgeKind] = ()) -> bool:
    """Kahn's algorithm over the attack graph restricted to edges not in ``ignore``."""
    ignore = set(ignore)
    succ: dict[ArgumentRef, list[ArgumentRef]] = {a: [] for a in af.arguments}
    indeg = {a: 0 for a in af.arguments}
    for a, b in {e.pair for e in af.attacks if e.kind not in ignore}:
        succ[a].append(b)
        indeg[b] += 1
    stack = [a for a, d in indeg.items() if d == 0]
    seen = 0
    while stack:
        a = stack.pop()
        seen += 1
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                stack.append(b)
    return seen == len(indeg)


def is_stable(af: ArgumentationFramework, ext: Iterable[ArgumentRef]) -> bool:
    """Conflict-free and attacking every argument outside ``ext``."""
    ext = frozenset(ext)
    if any(e.attacker in ext and e.target in ext for e in af.attacks):
        return False
    hit = {e.target for e in af.attacks if e.attacker in ext}
    return all(a in hit for a in af.arguments - ext)
