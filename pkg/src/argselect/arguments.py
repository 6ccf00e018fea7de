"""Arguments, attacks and preference resolution over a ground program.

Each ground rule instance is one argument node. A fact is an argument with no
premises. Two arguments with complementary conclusions rebut each other; an
argument whose conclusion contradicts a premise of another undermines it.
Priorities then orient rebuttals, and facts outrank every rule.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .grounder import GroundProgram
from .kb import Literal, Preference
from .parser import ParseError, Query

REBUTTAL = "rebuttal"
UNDERMINING = "undermining"
ATTACK = "attack"  # untyped edge read from an abstract framework file

FACT = "fact"
RULE = "rule"


@dataclass(frozen=True)
class Argument:
    id: str
    conclusion: Literal
    premises: tuple[Literal, ...] = ()
    # per premise: label of the fact establishing it, or None if assumed
    support: tuple[str | None, ...] = ()

    @property
    def kind(self) -> str:
        return RULE if self.premises else FACT

    @property
    def assumed(self) -> tuple[Literal, ...]:
        return tuple(p for p, s in zip(self.premises, self.support) if s is None)

    def __str__(self) -> str:
        if not self.premises:
            return f"{self.id}: {self.conclusion}"
        return f"{self.id}: {self.conclusion} <- {', '.join(map(str, self.premises))}"


@dataclass(frozen=True, order=True)
class AttackEdge:
    attacker: str
    target: str
    kind: str = REBUTTAL
    resolved_by: str | None = field(default=None, compare=False)

    @property
    def pair(self) -> tuple[str, str]:
        return (self.attacker, self.target)

    def __str__(self) -> str:
        return f"({self.attacker}, {self.target})"


@dataclass(frozen=True)
class Decision:
    """What preference resolution did to one attack edge."""

    action: str  # "drop" or "flip"
    edge: AttackEdge
    by: str
    replacement: AttackEdge | None = None

    def __str__(self) -> str:
        if self.action == "flip":
            return f"flip {self.edge} -> {self.replacement} by {self.by}"
        return f"drop {self.edge} by {self.by}"


class PreferenceRelation:
    """Strict priority over argument ids, closed under transitivity.

    Ids that reach each other through the given pairs (a mutual pair or a
    longer cycle) are left unordered.
    """

    def __init__(self, pairs: Iterable[tuple[str, str] | tuple[str, str, str]] = ()):
        self.direct: dict[tuple[str, str], str] = {}
        for pair in pairs:
            stronger, weaker = pair[0], pair[1]
            label = pair[2] if len(pair) > 2 else f"{stronger}>{weaker}"
            self.direct.setdefault((stronger, weaker), label)
        self._succ: dict[str, list[str]] = {}
        for a, b in sorted(self.direct):
            self._succ.setdefault(a, []).append(b)
        self._reach = {a: self._bfs(a) for a in self._succ}

    def _bfs(self, start: str) -> dict[str, str | None]:
        parent: dict[str, str | None] = {}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in self._succ.get(node, ()):
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        return parent

    def reaches(self, a: str, b: str) -> bool:
        return b in self._reach.get(a, ())

    def prefers(self, a: str, b: str) -> bool:
        return a != b and self.reaches(a, b) and not self.reaches(b, a)

    def reason(self, a: str, b: str) -> str:
        """Labels of the preference statements that put ``a`` above ``b``."""
        parent = self._reach[a]
        chain, node = [], b
        while node != a:
            prev = parent[node]
            chain.append(self.direct[(prev, node)])
            node = prev
        return ", ".join(reversed(chain))

    def pairs(self) -> list[tuple[str, str]]:
        return sorted((a, b) for a, reach in self._reach.items() for b in reach if self.prefers(a, b))

    def unordered(self) -> list[tuple[str, str]]:
        """Directly stated pairs that cancel out through a cycle."""
        return sorted(p for p in self.direct if not self.prefers(*p))

    def restrict(self, ids: Iterable[str]) -> PreferenceRelation:
        keep = set(ids)
        return PreferenceRelation(
            (a, b, label) for (a, b), label in self.direct.items() if a in keep and b in keep
        )

    def __len__(self) -> int:
        return len(self.direct)


@dataclass(frozen=True)
class ArgumentationFramework:
    arguments: tuple[str, ...] = ()
    attacks: tuple[AttackEdge, ...] = ()
    preferences: PreferenceRelation = field(default_factory=PreferenceRelation, compare=False)
    details: Mapping[str, Argument] = field(default_factory=dict, compare=False)
    # attack edges before preferences and the changes made to them
    initial_attacks: tuple[AttackEdge, ...] = field(default=(), compare=False)
    decisions: tuple[Decision, ...] = field(default=(), compare=False)

    @cached_property
    def relation(self) -> frozenset[tuple[str, str]]:
        return frozenset(e.pair for e in self.attacks)

    @cached_property
    def attackers(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, set[str]] = {a: set() for a in self.arguments}
        for a, b in self.relation:
            out[b].add(a)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    @cached_property
    def targets(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, set[str]] = {a: set() for a in self.arguments}
        for a, b in self.relation:
            out[a].add(b)
        return {k: tuple(sorted(v)) for k, v in out.items()}

    @property
    def displayed(self) -> tuple[str, ...]:
        """Ids shown to a reader: rule arguments, plus facts that attack something."""
        if not self.details:
            return self.arguments
        attacking = {a for a, _ in self.relation}
        return tuple(
            a for a in self.arguments if self.details[a].kind == RULE or a in attacking
        )

    def conclusion(self, arg_id: str) -> Literal | None:
        arg = self.details.get(arg_id)
        return arg.conclusion if arg else None


def build_candidate_arguments(gp: GroundProgram) -> list[Argument]:
    """One argument per ground fact and per ground rule not blocked by a fact.

    A rule instance is blocked when the complement of one of its premises is
    stated as a fact. Premises matching a fact are recorded as fact-supported,
    the rest as assumed.
    """
    facts: dict[Literal, str] = {}
    for rule in gp.rules:
        if not rule.body and not isinstance(rule.head, Preference):
            facts.setdefault(rule.head, str(rule.label))

    args = []
    for rule in gp.rules:
        if isinstance(rule.head, Preference):
            continue
        if any(lit.complement() in facts for lit in rule.body):
            continue
        support = tuple(facts.get(lit) for lit in rule.body)
        args.append(Argument(str(rule.label), rule.head, rule.body, support))
    return sorted(args, key=lambda a: a.id)


def compute_attacks(args: Iterable[Argument]) -> list[AttackEdge]:
    args = list(args)
    by_conclusion: dict[Literal, list[str]] = {}
    for arg in args:
        by_conclusion.setdefault(arg.conclusion, []).append(arg.id)
    edges = set()
    for arg in args:
        for other in by_conclusion.get(arg.conclusion.complement(), ()):
            edges.add(AttackEdge(arg.id, other, REBUTTAL))
        for premise in set(arg.premises):
            for other in by_conclusion.get(premise.complement(), ()):
                edges.add(AttackEdge(other, arg.id, UNDERMINING))
    return sorted(edges)


def resolve_attacks(
    edges: Iterable[AttackEdge],
    prefs: PreferenceRelation,
    facts: Iterable[str] = (),
) -> tuple[list[AttackEdge], list[Decision]]:
    """Orient conflicts by priority; return surviving edges and the changes made.

    An edge from the weaker side of a conflict is removed. When the opposite
    edge is missing (as in hand-written abstract frameworks) it is added, so
    the attack is flipped rather than lost. Underminings are never touched.
    """
    facts = frozenset(facts)
    edges = sorted(set(edges))
    present = {e.pair for e in edges}
    kept: dict[tuple[str, str, str], AttackEdge] = {}
    decisions = []

    def outranks(a: str, b: str) -> str | None:
        """Reason ``a`` beats ``b``, or None."""
        if (a in facts) != (b in facts):
            return "fact" if a in facts else None
        if prefs.prefers(a, b):
            return prefs.reason(a, b)
        return None

    for edge in edges:
        a, b = edge.pair
        if edge.kind == UNDERMINING:
            kept[(a, b, edge.kind)] = edge
            continue
        by = outranks(a, b)
        if by is not None:
            kept[(a, b, edge.kind)] = AttackEdge(a, b, edge.kind, by)
            continue
        by = outranks(b, a)
        if by is not None:
            if (b, a) in present:
                decisions.append(Decision("drop", edge, by))
            else:
                flipped = AttackEdge(b, a, edge.kind, by)
                decisions.append(Decision("flip", edge, by, flipped))
                kept[(b, a, edge.kind)] = flipped
            continue
        kept.setdefault((a, b, edge.kind), edge)
    return sorted(kept.values()), decisions


def apply_preferences(
    edges: Iterable[AttackEdge], prefs: PreferenceRelation, facts: Iterable[str] = ()
) -> list[AttackEdge]:
    return resolve_attacks(edges, prefs, facts)[0]


def preferences_from_ground(gp: GroundProgram) -> PreferenceRelation:
    pairs = [
        (str(r.head.stronger), str(r.head.weaker), str(r.label))
        for r in gp.rules
        if isinstance(r.head, Preference)
    ]
    return PreferenceRelation(pairs)


def relevant_ids(
    args: Mapping[str, Argument], edges: Iterable[AttackEdge], goal: Literal
) -> set[str]:
    """Arguments for or against ``goal``, closed under attackers and supporters."""
    attackers: dict[str, set[str]] = {}
    for e in edges:
        attackers.setdefault(e.target, set()).add(e.attacker)
    by_conclusion: dict[Literal, list[str]] = {}
    for arg in args.values():
        by_conclusion.setdefault(arg.conclusion, []).append(arg.id)

    seen = set(by_conclusion.get(goal, ())) | set(by_conclusion.get(goal.complement(), ()))
    queue = deque(sorted(seen))
    while queue:
        node = queue.popleft()
        nxt = set(attackers.get(node, ()))
        for premise in args[node].premises:
            nxt.update(by_conclusion.get(premise, ()))
        for other in sorted(nxt - seen):
            seen.add(other)
            queue.append(other)
    return seen


def build_framework(gp: GroundProgram, query: Query | Literal) -> ArgumentationFramework:
    goal = query.literal if isinstance(query, Query) else query
    candidates = {a.id: a for a in build_candidate_arguments(gp)}
    prefs = preferences_from_ground(gp)
    facts = {a.id for a in candidates.values() if a.kind == FACT}
    initial = compute_attacks(candidates.values())
    kept, decisions = resolve_attacks(initial, prefs, facts)

    keep = relevant_ids(candidates, kept, goal)
    ids = tuple(sorted(keep))
    return ArgumentationFramework(
        arguments=ids,
        attacks=tuple(e for e in kept if e.attacker in keep and e.target in keep),
        preferences=prefs.restrict(keep),
        details={i: candidates[i] for i in ids},
        initial_attacks=tuple(e for e in initial if e.attacker in keep and e.target in keep),
        decisions=tuple(d for d in decisions if d.edge.attacker in keep and d.edge.target in keep),
    )


# abstract framework files


def parse_af(text: str, origin: str = "<af>"):
    """Read ``arg``/``att``/``pref`` lines; returns (ids, attack pairs, preference relation)."""
    ids: list[str] = []
    attacks: list[tuple[str, str]] = []
    prefs: list[tuple[str, ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head, rest = parts[0], parts[1:]
        if head == "arg" and len(rest) == 1:
            if rest[0] not in ids:
                ids.append(rest[0])
        elif head == "att" and len(rest) == 2:
            attacks.append((rest[0], rest[1]))
        elif head == "pref" and len(rest) in (2, 3):
            prefs.append(tuple(rest))
        else:
            raise ParseError(f"malformed line {line!r}", origin, lineno, 1,
                             ["arg <id>", "att <id> <id>", "pref <id> <id> [label]"])
    known = set(ids)
    for a, b in attacks + [p[:2] for p in prefs]:
        for x in (a, b):
            if x not in known:
                raise ParseError(f"undeclared argument {x!r}", origin, 0, 0)
    return ids, attacks, PreferenceRelation(prefs)


def abstract_framework(
    ids: Iterable[str],
    attacks: Iterable[tuple[str, str]],
    prefs: PreferenceRelation | None = None,
) -> ArgumentationFramework:
    """Framework from bare ids and attack pairs, orienting edges by ``prefs``."""
    prefs = prefs or PreferenceRelation()
    initial = sorted({AttackEdge(a, b, ATTACK) for a, b in attacks})
    kept, decisions = resolve_attacks(initial, prefs)
    return ArgumentationFramework(
        arguments=tuple(sorted(set(ids))),
        attacks=tuple(kept),
        preferences=prefs,
        initial_attacks=tuple(initial),
        decisions=tuple(decisions),
    )


def load_af(text: str, origin: str = "<af>") -> ArgumentationFramework:
    return abstract_framework(*parse_af(text, origin))


def format_af(af: ArgumentationFramework) -> str:
    lines = [f"arg {a}" for a in af.arguments]
    lines += [f"att {e.attacker} {e.target}" for e in (af.initial_attacks or af.attacks)]
    lines += [f"pref {a} {b} {label}" for (a, b), label in sorted(af.preferences.direct.items())]
    return "".join(line + "\n" for line in lines)
