"""Explainer selection: compile profiles and a stakeholder model into a KB,
query ``use(e)`` and ``neg(use(e))`` for every candidate and rank them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

from .engine import Solution, solve
from .grounder import DEFAULT_CAP
from .kb import CONST_RE, RESERVED, Compound, Const, Literal, Program, Preference, Rule, SourceSpan, Var
from .parser import Query, parse_program
from .validation import merge_programs

RECOMMENDED = "recommended"
UNDECIDED = "undecided"
CONFLICTED = "conflicted"
REJECTED = "rejected"

RANK = {RECOMMENDED: 0, UNDECIDED: 1, CONFLICTED: 2, REJECTED: 3}


class SelectionError(ValueError):
    pass


@dataclass
class ExplainerProfile:
    name: str
    # attribute -> True / False / None (unknown)
    attributes: dict[str, bool | None] = field(default_factory=dict)
    extra: tuple[Rule, ...] = ()

    @classmethod
    def from_dict(cls, data: Mapping, origin: str = "<profile>") -> ExplainerProfile:
        attrs = {}
        for key, value in data.get("attributes", {}).items():
            if value == "unknown" or value is None:
                attrs[key] = None
            elif isinstance(value, bool):
                attrs[key] = value
            else:
                raise SelectionError(f"{origin}: attribute {key} must be true, false or \"unknown\"")
        extra = parse_program(data.get("extra", "") or "", origin).rules
        return cls(data["name"], attrs, extra)


def load_profile(path) -> ExplainerProfile:
    with open(path, encoding="utf-8") as fh:
        return ExplainerProfile.from_dict(json.load(fh), str(path))


def load_profiles(directory) -> dict[str, ExplainerProfile]:
    profiles = {}
    for path in sorted(Path(directory).glob("*.profile.json")):
        prof = load_profile(path)
        if prof.name in profiles:
            raise SelectionError(f"profile {prof.name} defined twice in {directory}")
        profiles[prof.name] = prof
    return profiles


def _check_name(name: str, what: str) -> None:
    if not CONST_RE.match(name) or name in RESERVED:
        raise SelectionError(f"invalid {what} name {name!r}")


def facts_from_profile(profile: ExplainerProfile) -> list[Rule]:
    """Facts stating the known characteristics of one explainer.

    ``True`` gives ``attr(name)``, ``False`` gives ``neg(attr(name))`` and
    unknown attributes contribute nothing.
    """
    _check_name(profile.name, "explainer")
    span = SourceSpan(f"<profile {profile.name}>")
    facts = []
    for attr in sorted(profile.attributes):
        _check_name(attr, "attribute")
        value = profile.attributes[attr]
        if value is None:
            continue
        lit = Literal(Compound(attr, (Const(profile.name),)), negated=not value)
        facts.append(Rule(Compound(f"{profile.name}_{attr}"), lit, (), span))
    return facts + list(profile.extra)


@dataclass
class StakeholderModel:
    requirement_rules: tuple[Rule, ...] = ()
    preferences: tuple[tuple[str, str], ...] = ()
    default_explainer: str = ""

    @classmethod
    def from_dict(cls, data: Mapping, origin: str = "<stakeholder>") -> StakeholderModel:
        rules = parse_program(data.get("rules", "") or "", origin).rules
        prefs = tuple((str(a), str(b)) for a, b in data.get("preferences", []))
        return cls(rules, prefs, data.get("default_explainer", ""))


def load_stakeholder(path) -> StakeholderModel:
    with open(path, encoding="utf-8") as fh:
        return StakeholderModel.from_dict(json.load(fh), str(path))


def compile_preferences(model: StakeholderModel, kb: Program) -> list[Rule]:
    """Turn ``[stronger, weaker]`` name pairs into bodiless preference rules.

    Labels of equal arity share their parameters (``prefer(r2(X1), r1(X1))``),
    which makes the priority apply per explainer.
    """
    arity = {}
    for rule in list(kb.rules) + list(model.requirement_rules):
        arity.setdefault(rule.label.functor, rule.label.arity)
    span = SourceSpan("<stakeholder preferences>")
    out = []
    for i, (a, b) in enumerate(model.preferences, 1):
        for name in (a, b):
            if name not in arity:
                raise SelectionError(f"preference refers to unknown rule {name!r}")
        if arity[a] == arity[b]:
            va = vb = tuple(Var(f"X{k}") for k in range(1, arity[a] + 1))
        else:
            va = tuple(Var(f"X{k}") for k in range(1, arity[a] + 1))
            vb = tuple(Var(f"Y{k}") for k in range(1, arity[b] + 1))
        stronger, weaker = Compound(a, va), Compound(b, vb)
        label = Compound(f"sp{i}", tuple(dict.fromkeys(va + vb)))
        out.append(Rule(label, Preference(stronger, weaker), (), span))
    return out


def stakeholder_program(model: StakeholderModel, kb: Program = Program()) -> Program:
    rules = tuple(model.requirement_rules) + tuple(compile_preferences(model, kb))
    return Program(rules, ("<stakeholder>",))


@dataclass
class CandidateResult:
    name: str
    status: str
    use: Solution
    neg_use: Solution


@dataclass
class SelectionReport:
    candidates: list[CandidateResult]
    ranking: list[str]
    chosen: str
    fallback_used: bool
    kb: Program = field(default_factory=Program, repr=False)

    def result(self, name: str) -> CandidateResult:
        return next(c for c in self.candidates if c.name == name)


def _status(use_ok: bool, neg_ok: bool) -> str:
    if use_ok and not neg_ok:
        return RECOMMENDED
    if neg_ok and not use_ok:
        return REJECTED
    if use_ok and neg_ok:
        return CONFLICTED
    return UNDECIDED


def select_explainer(
    kb: Program,
    candidates: Sequence[str],
    model: StakeholderModel,
    profiles: Mapping[str, ExplainerProfile] | None = None,
    cap: int = DEFAULT_CAP,
) -> SelectionReport:
    """Rank ``candidates`` and choose one, falling back to the model's default.

    When ``profiles`` is given every candidate and the default must have one,
    and their facts are added to the KB together with the stakeholder model.
    """
    candidates = list(dict.fromkeys(candidates))  # drop repeats, keep first position
    if not candidates:
        raise SelectionError("no candidate explainers given")
    for name in candidates:
        _check_name(name, "explainer")
    if profiles is not None:
        missing = [n for n in candidates + [model.default_explainer] if n not in profiles]
        if missing:
            raise SelectionError(
                f"unknown explainer(s) {', '.join(missing)}; registered: {', '.join(sorted(profiles)) or 'none'}"
            )
    if not model.default_explainer:
        raise SelectionError("stakeholder model has no default explainer")

    parts = [kb, stakeholder_program(model, kb)]
    if profiles is not None:
        for name in sorted(profiles):
            parts.append(Program(tuple(facts_from_profile(profiles[name])), (f"<profile {name}>",)))
    program = merge_programs(parts)

    results = []
    for name in candidates:
        use = Literal(Compound("use", (Const(name),)))
        u = solve(program, Query(use, {}), cap=cap)
        n = solve(program, Query(use.complement(), {}), cap=cap)
        results.append(CandidateResult(name, _status(u.verdict.accepted, n.verdict.accepted), u, n))

    order = sorted(range(len(results)), key=lambda i: (RANK[results[i].status], i))
    ranking = [results[i].name for i in order]
    best = results[order[0]]
    if best.status == RECOMMENDED:
        return SelectionReport(results, ranking, best.name, False, program)
    return SelectionReport(results, ranking, model.default_explainer, True, program)

