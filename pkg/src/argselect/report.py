"""Rendering of solves and selections as text traces, DOT graphs and JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .arguments import ArgumentationFramework, Decision
from .solver import Label, Labelling, QueryVerdict, Step

SCHEMA_VERSION = 1

DOT_COLORS = {Label.IN: "green", Label.OUT: "red", Label.UNDEC: "gray"}
ANSI = {Label.IN: "\x1b[32m", Label.OUT: "\x1b[31m", Label.UNDEC: "\x1b[90m"}
RESET = "\x1b[0m"


@dataclass(frozen=True)
class TraceDocument:
    query: str
    # phase 1
    arguments: tuple[str, ...] = ()
    argument_text: tuple[str, ...] = ()
    initial_attacks: tuple[tuple[str, str], ...] = ()
    preferences: tuple[tuple[str, str], ...] = ()
    # phase 2
    decisions: tuple[Decision, ...] = ()
    attacks: tuple[tuple[str, str], ...] = ()
    # phase 3
    steps: tuple[Step, ...] = ()
    # phase 4
    position: tuple[str, ...] = ()
    accepted: bool = False
    supporting: tuple[str, ...] = ()
    hidden: frozenset = field(default=frozenset(), compare=False)

    @property
    def phases(self) -> list[tuple[str, list[str]]]:
        return [
            ("framework", self._phase1()),
            ("preferences", [str(d) for d in self.decisions]),
            ("labelling", [str(s) for s in self.steps if s.argument not in self.hidden]),
            ("position", [self.conclusion_line()]),
        ]

    def _phase1(self) -> list[str]:
        lines = list(self.argument_text)
        lines += [f"attack ({a}, {b})" for a, b in self.initial_attacks]
        lines += [f"prefer {a} over {b}" for a, b in self.preferences]
        return lines

    def conclusion_line(self) -> str:
        verdict = "holds" if self.accepted else "is not accepted"
        return f"{self.query} {verdict}; position {_braced(self.position)}"


def _braced(ids: Sequence[str]) -> str:
    return "{" + ", ".join(ids) + "}"


def build_trace(af: ArgumentationFramework, labelling: Labelling, verdict: QueryVerdict) -> TraceDocument:
    shown = set(af.displayed)
    return TraceDocument(
        query=verdict.query,
        arguments=tuple(a for a in af.arguments if a in shown),
        argument_text=tuple(str(af.details[a]) if a in af.details else a for a in af.arguments if a in shown),
        initial_attacks=tuple(e.pair for e in af.initial_attacks),
        preferences=tuple((a, b) for a, b in af.preferences.pairs() if a in shown and b in shown),
        decisions=tuple(af.decisions),
        attacks=tuple(e.pair for e in af.attacks),
        steps=tuple(labelling.steps),
        position=verdict.position,
        accepted=verdict.accepted,
        supporting=verdict.supporting_arguments,
        hidden=frozenset(set(af.arguments) - shown),
    )


def render_trace(doc: TraceDocument, color: bool = False) -> str:
    titles = {
        "framework": "1. arguments, attacks and priorities",
        "preferences": "2. priorities applied to attacks",
        "labelling": "3. labelling",
        "position": "4. result",
    }
    out = [f"query: {doc.query}"]
    for name, lines in doc.phases:
        out.append(titles[name])
        if name == "labelling" and color:
            lines = [
                f"{ANSI[s.label]}{s}{RESET}" for s in doc.steps if s.argument not in doc.hidden
            ]
        out.extend(f"  {line}" for line in lines or ["(none)"])
    return "\n".join(out) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(af: ArgumentationFramework, labelling: Labelling, name: str = "framework") -> str:
    """DOT digraph coloured by label; attacks from OUT arguments are dotted."""
    shown = set(af.displayed)
    lines = [f"digraph {_quote(name)} {{"]
    for arg in af.arguments:
        if arg not in shown:
            continue
        label = labelling.assignment[arg]
        attrs = f"color={DOT_COLORS[label]}, style=filled, fillcolor={DOT_COLORS[label]}"
        if af.details and af.details[arg].kind == "fact":
            attrs += ", shape=box"
        lines.append(f"  {_quote(arg)} [{attrs}];")
    for edge in af.attacks:
        if edge.attacker not in shown or edge.target not in shown:
            continue
        style = "dotted" if labelling.assignment[edge.attacker] is Label.OUT else "solid"
        lines.append(f"  {_quote(edge.attacker)} -> {_quote(edge.target)} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# JSON


def _framework_json(af: ArgumentationFramework) -> dict:
    args = []
    for a in af.arguments:
        arg = af.details.get(a)
        if arg is None:
            args.append({"id": a})
            continue
        args.append({
            "id": a,
            "kind": arg.kind,
            "conclusion": str(arg.conclusion),
            "premises": [
                {"literal": str(p), "support": s if s is not None else "assumed"}
                for p, s in zip(arg.premises, arg.support)
            ],
        })
    return {
        "arguments": args,
        "attacks": [
            {"attacker": e.attacker, "target": e.target, "kind": e.kind, "resolved_by": e.resolved_by}
            for e in af.attacks
        ],
        "preferences": [list(p) for p in af.preferences.pairs()],
        "removed_attacks": [
            {
                "attacker": d.edge.attacker,
                "target": d.edge.target,
                "action": d.action,
                "by": d.by,
            }
            for d in af.decisions
        ],
    }


def _labelling_json(lab: Labelling) -> dict:
    return {a: str(lab.assignment[a]) for a in sorted(lab.assignment)}


def _steps_json(lab: Labelling) -> list:
    return [
        {"round": s.round, "argument": s.argument, "label": str(s.label), "cites": list(s.cites)}
        for s in lab.steps
    ]


def _verdict_json(v: QueryVerdict) -> dict:
    return {
        "query": v.query,
        "accepted": v.accepted,
        "supporting_arguments": list(v.supporting_arguments),
        "position": list(v.position),
    }


def _empty_framework() -> dict:
    return {"arguments": [], "attacks": [], "preferences": [], "removed_attacks": []}


def query_document(
    af: ArgumentationFramework | None,
    labelling: Labelling | None,
    verdict: QueryVerdict | None,
    kb_files: Sequence[str] = (),
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "inputs": {"kb_files": list(kb_files), "query": verdict.query if verdict else None},
        "framework": _framework_json(af) if af is not None else _empty_framework(),
        "labelling": _labelling_json(labelling) if labelling else {},
        "steps": _steps_json(labelling) if labelling else [],
        "verdicts": [_verdict_json(verdict)] if verdict else [],
        "chosen": None,
        "fallback_used": None,
    }


def selection_document(report, kb_files: Sequence[str] = ()) -> dict:
    verdicts = []
    for cand in report.candidates:
        entry = {"candidate": cand.name, "status": cand.status}
        for key, sol in (("use", cand.use), ("neg_use", cand.neg_use)):
            entry[key] = _verdict_json(sol.verdict) | {
                "framework": _framework_json(sol.framework),
                "labelling": _labelling_json(sol.labelling),
            }
        verdicts.append(entry)
    return {
        "schema_version": SCHEMA_VERSION,
        "inputs": {"kb_files": list(kb_files), "candidates": [c.name for c in report.candidates]},
        "framework": _empty_framework(),
        "labelling": {},
        "steps": [],
        "verdicts": verdicts,
        "ranking": list(report.ranking),
        "chosen": report.chosen,
        "fallback_used": report.fallback_used,
    }


def to_json(report, kb_files: Sequence[str] = (), timing: dict | None = None) -> str:
    """Canonical JSON for a selection report, a query solution or a prepared document.

    Keys keep a fixed order and no clock data is included unless ``timing``
    is passed.
    """
    if isinstance(report, dict):
        document = report
    elif hasattr(report, "ranking"):
        document = selection_document(report, kb_files)
    else:
        document = query_document(report.framework, report.labelling, report.verdict, kb_files)
    if timing is not None:
        document = dict(document, timing=timing)
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"
