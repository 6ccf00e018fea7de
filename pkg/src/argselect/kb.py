"""Knowledge-base data model: terms, literals, labelled rules and programs.

Statements follow the ``rule(Label, Head, Body)`` shape. A head is either a
literal or a ``prefer(Stronger, Weaker)`` atom; bodies are lists of literals.
Strong negation is written ``neg(L)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

CONST_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
VAR_RE = re.compile(r"[A-Z][a-zA-Z0-9_]*\Z")

RESERVED = {"rule", "neg", "prefer"}


@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Compound:
    """A functor applied to zero or more arguments; zero-arity prints bare."""

    functor: str
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def key(self) -> tuple[str, int]:
        return (self.functor, len(self.args))

    def __str__(self) -> str:
        if not self.args:
            return self.functor
        return f"{self.functor}({', '.join(str(a) for a in self.args)})"


Term = Union[Const, Var, Compound]
Substitution = Mapping[str, Const]


def term_vars(term: Term) -> Iterator[str]:
    """Yield variable names in left-to-right order (with repeats)."""
    if isinstance(term, Var):
        yield term.name
    elif isinstance(term, Compound):
        for arg in term.args:
            yield from term_vars(arg)


def term_consts(term: Term) -> Iterator[str]:
    if isinstance(term, Const):
        yield term.name
    elif isinstance(term, Compound):
        for arg in term.args:
            yield from term_consts(arg)


def substitute(term: Term, subst: Substitution) -> Term:
    if isinstance(term, Var):
        return subst.get(term.name, term)
    if isinstance(term, Compound) and term.args:
        return Compound(term.functor, tuple(substitute(a, subst) for a in term.args))
    return term


def is_ground(term: Term) -> bool:
    return next(term_vars(term), None) is None


@dataclass(frozen=True)
class Literal:
    atom: Compound
    negated: bool = False

    def complement(self) -> Literal:
        return Literal(self.atom, not self.negated)

    def substitute(self, subst: Substitution) -> Literal:
        return Literal(substitute(self.atom, subst), self.negated)

    def variables(self) -> Iterator[str]:
        return term_vars(self.atom)

    def is_ground(self) -> bool:
        return is_ground(self.atom)

    def __str__(self) -> str:
        return f"neg({self.atom})" if self.negated else str(self.atom)


@dataclass(frozen=True)
class Preference:
    """Head of a priority rule: the rule labelled ``stronger`` beats ``weaker``."""

    stronger: Compound
    weaker: Compound

    def substitute(self, subst: Substitution) -> Preference:
        return Preference(substitute(self.stronger, subst), substitute(self.weaker, subst))

    def variables(self) -> Iterator[str]:
        yield from term_vars(self.stronger)
        yield from term_vars(self.weaker)

    def is_ground(self) -> bool:
        return is_ground(self.stronger) and is_ground(self.weaker)

    def __str__(self) -> str:
        return f"prefer({self.stronger}, {self.weaker})"


Head = Union[Literal, Preference]


@dataclass(frozen=True)
class SourceSpan:
    file: str = "<string>"
    line: int = 0
    col: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class Rule:
    label: Compound
    head: Head
    body: tuple[Literal, ...] = ()
    span: SourceSpan = field(default=SourceSpan(), compare=False, repr=False)

    @property
    def is_preference(self) -> bool:
        return isinstance(self.head, Preference)

    @property
    def is_fact(self) -> bool:
        return not self.body and not self.is_preference and self.head.is_ground()

    def variables(self) -> list[str]:
        """Distinct variables in order of first occurrence (label, head, body)."""
        seen: dict[str, None] = {}
        for name in term_vars(self.label):
            seen.setdefault(name)
        for name in self.head.variables():
            seen.setdefault(name)
        for lit in self.body:
            for name in lit.variables():
                seen.setdefault(name)
        return list(seen)

    def constants(self) -> Iterator[str]:
        yield from term_consts(self.label)
        if isinstance(self.head, Preference):
            yield from term_consts(self.head.stronger)
            yield from term_consts(self.head.weaker)
        else:
            yield from term_consts(self.head.atom)
        for lit in self.body:
            yield from term_consts(lit.atom)

    def substitute(self, subst: Substitution) -> Rule:
        return Rule(
            label=substitute(self.label, subst),
            head=self.head.substitute(subst),
            body=tuple(lit.substitute(subst) for lit in self.body),
            span=self.span,
        )

    def __str__(self) -> str:
        body = ", ".join(str(lit) for lit in self.body)
        return f"rule({self.label}, {self.head}, [{body}])."


@dataclass(frozen=True)
class Program:
    rules: tuple[Rule, ...] = ()
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def counts(self) -> dict[str, int]:
        prefs = sum(1 for r in self.rules if r.is_preference)
        facts = sum(1 for r in self.rules if r.is_fact)
        return {"rules": len(self.rules) - prefs - facts, "preferences": prefs, "facts": facts}


def print_program(program: Program) -> str:
    """Canonical text: one statement per line, newline-terminated."""
    return "".join(f"{rule}\n" for rule in program.rules)
