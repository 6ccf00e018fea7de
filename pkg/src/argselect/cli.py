"""Command-line entry point.

Exit codes: 0 success / accepted, 1 rejected or fallback used, 2 parse
error, 3 validation error, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import report
from .arguments import load_af
from .engine import solve
from .grounder import DEFAULT_CAP, GroundingError, ground_program
from .kb import Program, print_program
from .parser import ParseError, parse_file, parse_query
from .selector import (
    SelectionError,
    StakeholderModel,
    load_profiles,
    load_stakeholder,
    select_explainer,
)
from .solver import QueryVerdict, accept, grounded_labelling
from .validation import KBValidationError, merge_programs, validate_program

EXIT_OK, EXIT_REJECTED, EXIT_PARSE, EXIT_INVALID, EXIT_USAGE = range(5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="argselect", description="Argumentation-based explainer selection.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="parse and check knowledge-base files")
    p.add_argument("kb", nargs="+")
    p.add_argument("--json", metavar="FILE", help="write the validation report as JSON")

    p = sub.add_parser("ground", help="print the ground program for a goal")
    p.add_argument("kb", nargs="+")
    p.add_argument("--goal", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("query", help="decide whether a goal literal is accepted")
    p.add_argument("kb", nargs="+")
    p.add_argument("--goal", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    _add_outputs(p)

    p = sub.add_parser("solve-af", help="label an abstract framework file")
    p.add_argument("af")
    p.add_argument("--query", metavar="ID")
    _add_outputs(p)

    p = sub.add_parser("select", help="choose an explainer among candidates")
    p.add_argument("kb", nargs="*")
    p.add_argument("--candidates", required=True, help="comma-separated explainer names")
    p.add_argument("--profiles", metavar="DIR")
    p.add_argument("--stakeholder", metavar="FILE")
    p.add_argument("--default", metavar="NAME", help="fallback explainer (overrides the stakeholder file)")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("export-dot", help="write the labelled framework for a goal as DOT")
    p.add_argument("kb", nargs="+")
    p.add_argument("--goal", help="goal literal (not needed for .af input)")
    p.add_argument("-o", "--output", metavar="FILE")
    return parser


def _add_outputs(p):
    p.add_argument("--trace", action="store_true", help="print every reasoning step")
    p.add_argument("--dot", metavar="FILE")
    p.add_argument("--json", metavar="FILE")
    p.add_argument("--timing", action="store_true", help="add wall-clock timings")


def _color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _load_kb(paths, err) -> Program:
    programs = []
    for path in paths:
        try:
            programs.append(parse_file(path))
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    program = merge_programs(programs)
    rep = validate_program(program)
    for issue in rep.warnings:
        print(issue, file=err)
    if rep.errors:
        raise KBValidationError(rep)
    return program


def _cmd_validate(args, out, err) -> int:
    programs = []
    for path in args.kb:
        try:
            programs.append(parse_file(path))
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        program = merge_programs(programs)
        rep = validate_program(program)
    except KBValidationError as exc:
        rep = exc.report
    for issue in rep.issues:
        print(issue, file=out)
    c = rep.counts
    print(f"rules: {c['rules']}, preferences: {c['preferences']}, facts: {c['facts']}", file=out)
    print("valid" if rep.ok else "invalid", file=out)
    if args.json:
        _write(args.json, rep.to_json() + "\n")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _cmd_ground(args, out, err) -> int:
    program = _load_kb(args.kb, err)
    gp = ground_program(program, parse_query(args.goal), cap=args.cap)
    out.write(print_program(gp.as_program()))
    return EXIT_OK


def _emit(args, out, af, lab, verdict, kb_files, timing) -> None:
    doc = report.build_trace(af, lab, verdict)
    if args.trace:
        out.write(report.render_trace(doc, color=_color(out)))
    else:
        print(doc.conclusion_line(), file=out)
    if args.timing:
        print("timing: " + ", ".join(f"{k}={v:.6f}s" for k, v in timing.items()), file=out)
    if args.dot:
        _write(args.dot, report.to_dot(af, lab))
    if args.json:
        document = report.query_document(af, lab, verdict, kb_files)
        _write(args.json, report.to_json(document, timing=timing if args.timing else None))


def _cmd_query(args, out, err) -> int:
    t0 = time.perf_counter()
    program = _load_kb(args.kb, err)
    query = parse_query(args.goal)
    t1 = time.perf_counter()
    sol = solve(program, query, cap=args.cap)
    t2 = time.perf_counter()
    timing = {"load": t1 - t0, "solve": t2 - t1}
    _emit(args, out, sol.framework, sol.labelling, sol.verdict, args.kb, timing)
    return EXIT_OK if sol.verdict.accepted else EXIT_REJECTED


def _read_af(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return load_af(text, str(path))


def _cmd_solve_af(args, out, err) -> int:
    t0 = time.perf_counter()
    af = _read_af(args.af)
    if args.query is not None and args.query not in af.arguments:
        raise UsageError(f"unknown argument {args.query!r}")
    lab = grounded_labelling(af)
    timing = {"solve": time.perf_counter() - t0}
    if args.query is None:
        position = tuple(a for a in af.arguments if a in lab.in_set)
        verdict = QueryVerdict("grounded extension", True, (), lab, position)
    else:
        verdict = accept(af, args.query, labelling=lab)
    _emit(args, out, af, lab, verdict, [args.af], timing)
    return EXIT_OK if verdict.accepted else EXIT_REJECTED


def _cmd_select(args, out, err) -> int:
    t0 = time.perf_counter()
    kb = _load_kb(args.kb, err) if args.kb else Program()
    model = load_stakeholder(args.stakeholder) if args.stakeholder else StakeholderModel()
    if args.default:
        model.default_explainer = args.default
    if not model.default_explainer:
        raise UsageError("no default explainer: pass --default or a stakeholder file that names one")
    profiles = load_profiles(args.profiles) if args.profiles else None
    candidates = [c.strip() for c in args.candidates.split(",") if c.strip()]
    rep = select_explainer(kb, candidates, model, profiles)
    timing = {"select": time.perf_counter() - t0}

    for cand in rep.candidates:
        u, n = cand.use.verdict, cand.neg_use.verdict
        print(
            f"{cand.name}: {cand.status} "
            f"(use {'accepted' if u.accepted else 'not accepted'}, "
            f"neg(use) {'accepted' if n.accepted else 'not accepted'})",
            file=out,
        )
        if args.trace:
            for sol in (cand.use, cand.neg_use):
                doc = report.build_trace(sol.framework, sol.labelling, sol.verdict)
                text = report.render_trace(doc, color=_color(out))
                out.write("".join(f"    {line}\n" for line in text.splitlines()))
    print("ranking: " + ", ".join(rep.ranking), file=out)
    suffix = " (fallback: no candidate recommended)" if rep.fallback_used else ""
    print(f"chosen: {rep.chosen}{suffix}", file=out)
    if args.timing:
        print(f"timing: select={timing['select']:.6f}s", file=out)
    if args.json:
        _write(args.json, report.to_json(rep, kb_files=args.kb, timing=timing if args.timing else None))
    return EXIT_REJECTED if rep.fallback_used else EXIT_OK


def _cmd_export_dot(args, out, err) -> int:
    if len(args.kb) == 1 and args.kb[0].endswith(".af"):
        af = _read_af(args.kb[0])
        lab = grounded_labelling(af)
    else:
        if not args.goal:
            raise UsageError("--goal is required for knowledge-base input")
        sol = solve(_load_kb(args.kb, err), parse_query(args.goal))
        af, lab = sol.framework, sol.labelling
    dot = report.to_dot(af, lab)
    if args.output:
        _write(args.output, dot)
    else:
        out.write(dot)
    return EXIT_OK


COMMANDS = {
    "validate": _cmd_validate,
    "ground": _cmd_ground,
    "query": _cmd_query,
    "solve-af": _cmd_solve_af,
    "select": _cmd_select,
    "export-dot": _cmd_export_dot,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out, err)
    except (ParseError, json.JSONDecodeError) as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except KBValidationError as exc:
        for issue in exc.report.errors:
            print(issue, file=err)
        return EXIT_INVALID
    except GroundingError as exc:
        print(f"grounding error: {exc}", file=err)
        return EXIT_INVALID
    except (UsageError, SelectionError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
