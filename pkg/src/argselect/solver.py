"""Labelling-based solving of abstract argumentation frameworks."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from .arguments import ArgumentationFramework
from .kb import Literal
from .parser import Query

MAX_ENUMERATION = 20


class Label(str, Enum):
    IN = "IN"
    OUT = "OUT"
    UNDEC = "UNDEC"

    def __str__(self) -> str:
        return self.value


class SizeLimitError(ValueError):
    pass


@dataclass(frozen=True)
class Step:
    index: int
    round: int
    argument: str
    label: Label
    cites: tuple[str, ...]

    @property
    def justification(self) -> str:
        if self.label is Label.IN:
            if not self.cites:
                return "unattacked"
            return "every attacker is OUT: " + ", ".join(self.cites)
        if self.label is Label.OUT:
            return "attacked by IN argument " + ", ".join(self.cites)
        return "neither IN nor OUT at the fixpoint"

    def __str__(self) -> str:
        return f"{self.argument} {self.label} ({self.justification})"


@dataclass
class Labelling:
    assignment: dict[str, Label] = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)

    def _with(self, label: Label) -> frozenset[str]:
        return frozenset(a for a, lab in self.assignment.items() if lab is label)

    @property
    def in_set(self) -> frozenset[str]:
        return self._with(Label.IN)

    @property
    def out_set(self) -> frozenset[str]:
        return self._with(Label.OUT)

    @property
    def undec_set(self) -> frozenset[str]:
        return self._with(Label.UNDEC)

    def __getitem__(self, arg: str) -> Label:
        return self.assignment[arg]


def grounded_labelling(af: ArgumentationFramework) -> Labelling:
    """Least-fixpoint IN/OUT/UNDEC labelling, recorded round by round.

    Each round first labels IN every unlabelled argument whose attackers are
    all OUT, then labels OUT everything those arguments attack. Runs in time
    linear in arguments plus attacks.
    """
    attackers = {a: set() for a in af.arguments}
    targets = {a: set() for a in af.arguments}
    for a, b in af.relation:
        attackers[b].add(a)
        targets[a].add(b)
    live = {a: len(attackers[a]) for a in af.arguments}

    lab = Labelling()
    frontier = sorted(a for a, n in live.items() if n == 0)
    rnd = 0
    while frontier:
        rnd += 1
        newly_out: list[str] = []
        for arg in frontier:
            lab.assignment[arg] = Label.IN
            lab.steps.append(Step(len(lab.steps), rnd, arg, Label.IN, tuple(sorted(attackers[arg]))))
        for arg in frontier:
            for tgt in sorted(targets[arg]):
                if tgt not in lab.assignment:
                    lab.assignment[tgt] = Label.OUT
                    lab.steps.append(Step(len(lab.steps), rnd, tgt, Label.OUT, (arg,)))
                    newly_out.append(tgt)
        candidates = set()
        for arg in newly_out:
            for tgt in targets[arg]:
                live[tgt] -= 1
                if live[tgt] == 0 and tgt not in lab.assignment:
                    candidates.add(tgt)
        frontier = sorted(candidates)

    for arg in af.arguments:
        if arg not in lab.assignment:
            lab.assignment[arg] = Label.UNDEC
            lab.steps.append(Step(len(lab.steps), rnd + 1, arg, Label.UNDEC, ()))
    return lab


def is_conflict_free(af: ArgumentationFramework, members: Iterable[str]) -> bool:
    s = set(members)
    return not any(a in s and b in s for a, b in af.relation)


def is_admissible(af: ArgumentationFramework, members: Iterable[str]) -> bool:
    s = set(members)
    if not is_conflict_free(af, s):
        return False
    attacked_by_s = {b for a, b in af.relation if a in s}
    return all(b in attacked_by_s for a in s for b in af.attackers[a])


@dataclass(frozen=True)
class Extension:
    members: frozenset[str]
    semantics: str

    def __str__(self) -> str:
        return "{" + ", ".join(sorted(self.members)) + "}"


def _masks(af: ArgumentationFramework):
    if len(af.arguments) > MAX_ENUMERATION:
        raise SizeLimitError(
            f"{len(af.arguments)} arguments exceeds the brute-force limit of {MAX_ENUMERATION}"
        )
    index = {a: i for i, a in enumerate(af.arguments)}
    att_in = [0] * len(index)   # bitmask of attackers of i
    att_out = [0] * len(index)  # bitmask of arguments i attacks
    for a, b in af.relation:
        att_in[index[b]] |= 1 << index[a]
        att_out[index[a]] |= 1 << index[b]
    return att_in, att_out


def _admissible_masks(af: ArgumentationFramework) -> list[int]:
    att_in, att_out = _masks(af)
    n = len(af.arguments)
    found = []
    for s in range(1 << n):
        attacked = 0
        for i in range(n):
            if s >> i & 1:
                attacked |= att_out[i]
        if attacked & s:
            continue
        if all(att_in[i] & ~attacked == 0 for i in range(n) if s >> i & 1):
            found.append(s)
    return found


def _to_extensions(af, masks, semantics) -> list[Extension]:
    exts = [
        Extension(frozenset(a for i, a in enumerate(af.arguments) if m >> i & 1), semantics)
        for m in masks
    ]
    return sorted(exts, key=lambda e: (len(e.members), sorted(e.members)))


def enumerate_admissible(af: ArgumentationFramework) -> list[Extension]:
    """Every admissible set by subset enumeration, smallest first."""
    return _to_extensions(af, _admissible_masks(af), "admissible")


def enumerate_preferred(af: ArgumentationFramework) -> list[Extension]:
    masks = _admissible_masks(af)
    maximal = [m for m in masks if not any(o != m and o & m == m for o in masks)]
    return _to_extensions(af, maximal, "preferred")


def grounded_extension(af: ArgumentationFramework) -> Extension:
    return Extension(grounded_labelling(af).in_set, "grounded")


@dataclass
class QueryVerdict:
    query: str
    accepted: bool
    supporting_arguments: tuple[str, ...]
    labelling: Labelling
    position: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.query}: {'accepted' if self.accepted else 'not accepted'}"


def accept(
    af: ArgumentationFramework,
    goal: Query | Literal | str,
    mode: str = "credulous",
    labelling: Labelling | None = None,
) -> QueryVerdict:
    """Grounded acceptance of ``goal``.

    ``goal`` is a literal for structured frameworks or an argument id for
    abstract ones. The grounded extension is unique, so credulous and
    skeptical acceptance coincide.
    """
    if mode not in ("credulous", "skeptical"):
        raise ValueError(f"unknown acceptance mode {mode!r}")
    lab = labelling or grounded_labelling(af)
    if isinstance(goal, Query):
        goal = goal.literal
    ins = lab.in_set
    if isinstance(goal, Literal):
        support = tuple(a for a in af.arguments if a in ins and af.conclusion(a) == goal)
    else:
        support = (goal,) if goal in ins else ()
    position = tuple(a for a in af.displayed if a in ins)
    return QueryVerdict(str(goal), bool(support), support, lab, position)
