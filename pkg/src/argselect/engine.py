"""End-to-end query answering: ground, build the framework, label, decide."""

from __future__ import annotations

from dataclasses import dataclass

from .arguments import ArgumentationFramework, build_framework
from .grounder import DEFAULT_CAP, GroundProgram, ground_program
from .kb import Literal, Program
from .parser import Query, parse_query
from .solver import Labelling, QueryVerdict, accept, grounded_labelling


@dataclass
class Solution:
    query: Query
    ground: GroundProgram
    framework: ArgumentationFramework
    labelling: Labelling
    verdict: QueryVerdict


def solve(program: Program, query: Query | Literal | str, cap: int = DEFAULT_CAP) -> Solution:
    if isinstance(query, str):
        query = parse_query(query)
    elif isinstance(query, Literal):
        query = Query(query)
    gp = ground_program(program, query, cap=cap)
    af = build_framework(gp, query)
    lab = grounded_labelling(af)
    return Solution(query, gp, af, lab, accept(af, query, labelling=lab))
