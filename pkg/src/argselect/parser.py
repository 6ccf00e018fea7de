"""Recursive-descent parser for ``.gkb`` knowledge bases and goal literals.

Grammar::

    program   := {statement}
    statement := "rule" "(" label "," head "," body ")" "."
    head      := "prefer" "(" label "," label ")" | literal
    body      := "[" [literal {"," literal}] "]"
    literal   := "neg" "(" atom ")" | atom
    atom      := ident ["(" arg {"," arg} ")"]
    arg       := Var ["=" const] | ident ["(" arg {"," arg} ")"]

``%`` starts a comment running to end of line. A binding ``X = c`` is removed
at parse time by applying ``{X: c}`` to the whole enclosing statement.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .kb import (
    RESERVED,
    Compound,
    Const,
    Literal,
    Preference,
    Program,
    Rule,
    SourceSpan,
    Term,
    Var,
)

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<ident>[a-z][a-zA-Z0-9_]*)
  | (?P<var>[A-Z][a-zA-Z0-9_]*)
  | (?P<punct>[()\[\],.=])
    """,
    re.VERBOSE,
)


class ParseError(ValueError):
    def __init__(self, message: str, origin: str = "<string>", line: int = 0, col: int = 0,
                 expected: Iterable[str] = ()):
        self.message = message
        self.origin = origin
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        text = f"{origin}:{line}:{col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, var, punct, eof
    text: str
    line: int
    col: int


def tokenize(text: str, origin: str = "<string>") -> list[Token]:
    tokens = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", origin, line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - line_start + 1))
        newlines = m.group().count("\n")
        if newlines:
            line += newlines
            line_start = m.start() + m.group().rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Query:
    """A goal literal together with the bindings written inside it."""

    literal: Literal
    bindings: dict[str, Const] = field(default_factory=dict)

    def __str__(self) -> str:
        return str(self.literal)


class _Parser:
    def __init__(self, text: str, origin: str):
        self.origin = origin
        self.tokens = tokenize(text, origin)
        self.pos = 0
        self.bindings: dict[str, Const] = {}

    # token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str, expected: Iterable[str] = (), tok: Token | None = None):
        tok = tok or self.tok
        where = "end of input" if tok.kind == "eof" else repr(tok.text)
        return ParseError(f"{message} at {where}", self.origin, tok.line, tok.col, expected)

    def expect(self, text: str) -> Token:
        tok = self.tok
        if tok.kind == "punct" and tok.text == text or tok.kind == "ident" and tok.text == text:
            self.pos += 1
            return tok
        raise self.error("unexpected token", [repr(text)])

    def accept(self, text: str) -> bool:
        tok = self.tok
        if tok.kind in ("punct", "ident") and tok.text == text:
            self.pos += 1
            return True
        return False

    # grammar

    def program(self) -> list[Rule]:
        rules = []
        while self.tok.kind != "eof":
            rules.append(self.statement())
        return rules

    def statement(self) -> Rule:
        start = self.tok
        if not (start.kind == "ident" and start.text == "rule"):
            raise self.error("expected a rule/3 statement", ["'rule'"])
        self.pos += 1
        self.bindings = {}
        self.expect("(")
        label = self.compound(context="label")
        self.expect(",")
        head = self.head()
        self.expect(",")
        body = self.body()
        self.expect(")")
        self.expect(".")
        rule = Rule(label, head, tuple(body), SourceSpan(self.origin, start.line, start.col))
        if self.bindings:
            rule = rule.substitute(self.bindings)
        return rule

    def head(self):
        if self.tok.kind == "ident" and self.tok.text == "prefer":
            self.pos += 1
            self.expect("(")
            stronger = self.compound(context="label")
            self.expect(",")
            weaker = self.compound(context="label")
            self.expect(")")
            return Preference(stronger, weaker)
        return self.literal()

    def body(self) -> list[Literal]:
        self.expect("[")
        lits: list[Literal] = []
        if self.accept("]"):
            return lits
        lits.append(self.literal())
        while self.accept(","):
            lits.append(self.literal())
        if not self.accept("]"):
            raise self.error("unterminated body list", ["','", "']'"])
        return lits

    def literal(self) -> Literal:
        tok = self.tok
        if tok.kind == "ident" and tok.text == "neg":
            self.pos += 1
            self.expect("(")
            inner = self.tok
            if inner.kind == "ident" and inner.text == "neg":
                raise self.error("double negation is not allowed", tok=inner)
            atom = self.compound(context="atom")
            self.expect(")")
            return Literal(atom, negated=True)
        return Literal(self.compound(context="atom"))

    def compound(self, context: str) -> Compound:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected {context}", ["identifier"])
        if tok.text in RESERVED:
            raise self.error(f"reserved functor {tok.text!r} cannot be used as {context}")
        self.pos += 1
        if not self.accept("("):
            return Compound(tok.text)
        args = [self.arg()]
        while self.accept(","):
            args.append(self.arg())
        if not self.accept(")"):
            raise self.error("unbalanced parentheses", ["','", "')'"])
        return Compound(tok.text, tuple(args))

    def arg(self) -> Term:
        tok = self.tok
        if tok.kind == "var":
            self.pos += 1
            if self.accept("="):
                value = self.tok
                if value.kind != "ident" or value.text in RESERVED:
                    raise self.error("a binding must have a constant on the right", ["constant"])
                self.pos += 1
                if self.tok.kind == "punct" and self.tok.text == "(":
                    raise self.error("a binding must have a constant on the right")
                bound = self.bindings.get(tok.text)
                if bound is not None and bound.name != value.text:
                    raise self.error(f"conflicting bindings for {tok.text}", tok=tok)
                self.bindings[tok.text] = Const(value.text)
                return Var(tok.text)
            return Var(tok.text)
        if tok.kind == "ident":
            if tok.text in RESERVED:
                raise self.error(f"reserved functor {tok.text!r} cannot appear as an argument")
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "punct" and nxt.text == "(":
                return self.compound(context="term")
            self.pos += 1
            return Const(tok.text)
        raise self.error("expected a term", ["constant", "variable"])


def parse_program(text: str, origin: str = "<string>") -> Program:
    """Parse ``.gkb`` source into a :class:`Program`; raises :class:`ParseError`."""
    parser = _Parser(text, origin)
    return Program(tuple(parser.program()), provenance=(origin,))


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read(), str(path))


def parse_query(text: str, origin: str = "<goal>") -> Query:
    """Parse a goal such as ``neg(use(X=lime))``.

    The binding is eliminated from the returned literal but kept in
    ``Query.bindings`` so grounding can be restricted by it.
    """
    parser = _Parser(text, origin)
    lit = parser.literal()
    if parser.tok.kind == "punct" and parser.tok.text == ".":
        parser.pos += 1
    if parser.tok.kind != "eof":
        raise parser.error("trailing input after goal")
    bindings = dict(parser.bindings)
    return Query(lit.substitute(bindings), bindings)
