"""Instantiate rule schemas over the finite set of constants in a program."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

from .kb import Const, Literal, Program, Rule, term_consts
from .parser import Query

DEFAULT_CAP = 100_000


class GroundingError(RuntimeError):
    pass


def collect_constants(program: Program, bindings: Mapping[str, Const] | None = None) -> tuple[str, ...]:
    """Every constant name occurring in ``program`` or ``bindings``, sorted."""
    names = {name for rule in program.rules for name in rule.constants()}
    if bindings:
        names.update(c.name for c in bindings.values())
    return tuple(sorted(names))


def _instances(rule: Rule, domain, bindings: Mapping[str, Const]) -> Iterator[tuple[dict, Rule]]:
    names = rule.variables()
    fixed = {name: bindings[name] for name in names if name in bindings}
    free = [name for name in names if name not in fixed]
    consts = [Const(c) for c in domain]
    consts += [c for c in sorted(set(fixed.values())) if c.name not in domain]
    for values in product(consts, repeat=len(free)):
        subst = dict(fixed)
        subst.update(zip(free, values))
        yield subst, (rule.substitute(subst) if subst else rule)


def ground_rule(rule: Rule, domain, bindings: Mapping[str, Const] | None = None) -> list[Rule]:
    """All instances of ``rule``; bindings first, then the domain in order."""
    return [inst for _, inst in _instances(rule, tuple(domain), bindings or {})]


def instance_count(program: Program, domain_size: int, bindings: Mapping[str, Const] | None = None) -> int:
    bindings = bindings or {}
    return sum(
        domain_size ** sum(1 for v in rule.variables() if v not in bindings)
        for rule in program.rules
    )


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[Rule, ...] = ()
    # ground label text -> (schema label text, {var: const})
    origin: dict = field(default_factory=dict, compare=False)
    domain: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.rules)

    def as_program(self) -> Program:
        return Program(self.rules)


def ground_program(
    program: Program,
    query: Query | Literal | None = None,
    *,
    bindings: Mapping[str, Const] | None = None,
    cap: int = DEFAULT_CAP,
) -> GroundProgram:
    """Ground every rule and preference schema of ``program``.

    Bindings written in the query (``use(X=lime)``) are applied to every rule
    before enumeration. Variables left free range over the whole domain,
    including head-only variables of bodiless preference schemas.
    """
    merged: dict[str, Const] = {}
    literal = query
    if isinstance(query, Query):
        merged.update(query.bindings)
        literal = query.literal
    if bindings:
        merged.update(bindings)

    names = set(collect_constants(program, merged))
    if isinstance(literal, Literal):
        names.update(term_consts(literal.atom))
    domain = tuple(sorted(names))

    total = instance_count(program, len(domain), merged)
    if total > cap:
        raise GroundingError(f"grounding would produce {total} instances (cap {cap})")

    rules: list[Rule] = []
    origin: dict[str, tuple[str, dict[str, str]]] = {}
    for schema in program.rules:
        for subst, inst in _instances(schema, domain, merged):
            key = str(inst.label)
            if key in origin:
                raise GroundingError(f"ground label {key} produced twice")
            origin[key] = (str(schema.label), {k: v.name for k, v in subst.items()})
            rules.append(inst)
    return GroundProgram(tuple(rules), origin, domain)
