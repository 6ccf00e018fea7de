"""Static checks over parsed programs, and merging of several KB files."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from typing import Iterable

from .kb import Compound, Program, Rule, SourceSpan, Var, term_vars

ERROR = "error"
WARNING = "warning"
INFO = "info"


@dataclass(frozen=True)
class Issue:
    severity: str
    code: str
    message: str
    span: SourceSpan = SourceSpan()

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "message": self.message,
            "file": self.span.file,
            "line": self.span.line,
            "col": self.span.col,
        }

    def __str__(self) -> str:
        return f"{self.span}: {self.severity}: {self.message} [{self.code}]"


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=lambda: {"rules": 0, "preferences": 0, "facts": 0})

    def add(self, severity: str, code: str, message: str, span: SourceSpan = SourceSpan()) -> None:
        self.issues.append(Issue(severity, code, message, span))

    def _of(self, severity: str) -> list[Issue]:
        return [i for i in self.issues if i.severity == severity]

    @property
    def errors(self) -> list[Issue]:
        return self._of(ERROR)

    @property
    def warnings(self) -> list[Issue]:
        return self._of(WARNING)

    @property
    def info(self) -> list[Issue]:
        return self._of(INFO)

    @property
    def ok(self) -> bool:
        return not self.errors

    def as_dict(self) -> dict:
        return {
            "errors": [i.as_dict() for i in self.errors],
            "warnings": [i.as_dict() for i in self.warnings],
            "info": [i.as_dict() for i in self.info],
            "counts": dict(self.counts),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


class KBValidationError(Exception):
    """Raised when a program fails validation; carries the report."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(str(i) for i in report.errors))


def _unifiable(a, b, subst: dict) -> bool:
    # labels are renamed apart by the caller (distinct variable prefixes)
    def walk(t):
        while isinstance(t, Var) and t.name in subst:
            t = subst[t.name]
        return t

    a, b = walk(a), walk(b)
    if a == b:
        return True
    if isinstance(a, Var):
        subst[a.name] = b
        return True
    if isinstance(b, Var):
        subst[b.name] = a
        return True
    if isinstance(a, Compound) and isinstance(b, Compound):
        if a.key != b.key:
            return False
        return all(_unifiable(x, y, subst) for x, y in zip(a.args, b.args))
    return False


def _rename(term, prefix: str):
    if isinstance(term, Var):
        return Var(prefix + term.name)
    if isinstance(term, Compound):
        return Compound(term.functor, tuple(_rename(a, prefix) for a in term.args))
    return term


def labels_overlap(a: Compound, b: Compound) -> bool:
    """True when some grounding of ``a`` equals some grounding of ``b``."""
    return a.key == b.key and _unifiable(_rename(a, "L_"), _rename(b, "R_"), {})


def _check_duplicates(rules: list[Rule], report: ValidationReport, code: str = "duplicate-label") -> None:
    by_key: dict[tuple, list[Rule]] = {}
    for rule in rules:
        for other in by_key.get(rule.label.key, ()):
            if labels_overlap(rule.label, other.label):
                report.add(
                    ERROR, code,
                    f"label {rule.label} clashes with {other.label} declared at {other.span}",
                    rule.span,
                )
                break
        by_key.setdefault(rule.label.key, []).append(rule)


def _check_variables(rule: Rule, report: ValidationReport) -> None:
    label_vars = set(term_vars(rule.label))
    body_vars = {v for lit in rule.body for v in lit.variables()}
    for name in dict.fromkeys(rule.head.variables()):
        if name not in body_vars and name in label_vars:
            report.add(INFO, "head-only-variable",
                       f"{name} in {rule.label} is grounded over every constant", rule.span)
    for name in rule.variables():
        if name not in label_vars:
            report.add(ERROR, "variable-not-in-label",
                       f"variable {name} of {rule.label} does not appear in its label", rule.span)


def _check_preferences(rules: list[Rule], report: ValidationReport) -> None:
    declared = {r.label.key for r in rules}
    edges: dict[str, set[str]] = {}
    spans: dict[tuple[str, str], SourceSpan] = {}
    for rule in rules:
        if not rule.is_preference:
            continue
        pref = rule.head
        for side in (pref.stronger, pref.weaker):
            if side.key not in declared:
                report.add(ERROR, "undeclared-label",
                           f"{rule.label} refers to undeclared rule {side.functor}/{side.arity}", rule.span)
        if rule.body:
            report.add(WARNING, "preference-body-ignored",
                       f"body of preference rule {rule.label} is ignored", rule.span)
        a, b = pref.stronger.functor, pref.weaker.functor
        if a == b:
            report.add(ERROR, "preference-cycle", f"{rule.label} prefers {a} over itself", rule.span)
            continue
        edges.setdefault(a, set()).add(b)
        spans.setdefault((a, b), rule.span)

    mutual = set()
    for a, targets in edges.items():
        for b in targets:
            if a < b and a in edges.get(b, ()):
                mutual.add((a, b))
                report.add(WARNING, "mutual-preference",
                           f"no strict preference between {a}, {b}", spans[(a, b)])
    graph = {
        a: {b for b in targets if (min(a, b), max(a, b)) not in mutual}
        for a, targets in edges.items()
    }
    try:
        tuple(TopologicalSorter(graph).static_order())
    except CycleError as exc:
        cycle = exc.args[1]
        report.add(ERROR, "preference-cycle",
                   "preference cycle: " + " > ".join(reversed(cycle)),
                   spans.get((cycle[1], cycle[0]), SourceSpan()))


def validate_program(program: Program) -> ValidationReport:
    """Check labels, variables and the preference graph; never raises."""
    report = ValidationReport(counts=program.counts())
    rules = list(program.rules)
    _check_duplicates(rules, report)
    for rule in rules:
        _check_variables(rule, report)
    _check_preferences(rules, report)
    return report


def merge_programs(programs: Iterable[Program]) -> Program:
    """Concatenate programs in order.

    Raises :class:`KBValidationError` when a label is declared in more than one
    of the inputs; each clash names both source locations.
    """
    programs = list(programs)
    rules: list[Rule] = []
    provenance: list[str] = []
    report = ValidationReport()
    seen: dict[tuple, list[Rule]] = {}
    for program in programs:
        for rule in program.rules:
            for other in seen.get(rule.label.key, ()):
                if labels_overlap(rule.label, other.label):
                    report.add(ERROR, "duplicate-label",
                               f"label {rule.label} at {rule.span} already declared at {other.span}",
                               rule.span)
                    break
        for rule in program.rules:
            seen.setdefault(rule.label.key, []).append(rule)
        rules.extend(program.rules)
        provenance.extend(p for p in program.provenance if p not in provenance)
    if report.errors:
        raise KBValidationError(report)
    merged = Program(tuple(rules), tuple(provenance))
    report.counts = merged.counts()
    return merged

