"""Random program generation shared by property tests."""

import random

from argselect.kb import Compound, Const, Literal, Preference, Program, Rule, Var

PREDICATES = ["p", "q", "is_sparse", "use", "stable_x", "aB_1"]
CONSTANTS = ["a", "b", "lime", "c_2"]
VARIABLES = ["X", "Y", "Z_1"]


def random_term(rng, depth=0):
    roll = rng.random()
    if roll < 0.45:
        return Const(rng.choice(CONSTANTS))
    if roll < 0.9 or depth >= 1:
        return Var(rng.choice(VARIABLES))
    return Compound(rng.choice(PREDICATES), tuple(random_term(rng, depth + 1) for _ in range(rng.randint(1, 2))))


def random_atom(rng):
    return Compound(rng.choice(PREDICATES), tuple(random_term(rng) for _ in range(rng.randint(0, 3))))


def random_program(rng: random.Random, max_rules: int = 8) -> Program:
    rules = []
    for i in range(rng.randint(0, max_rules)):
        body = tuple(Literal(random_atom(rng), rng.random() < 0.3) for _ in range(rng.randint(0, 3)))
        if rng.random() < 0.2:
            head = Preference(
                Compound(f"r{rng.randint(0, 5)}", (Var("X"),)),
                Compound(f"r{rng.randint(0, 5)}", (Var("X"),)),
            )
        else:
            head = Literal(random_atom(rng), rng.random() < 0.3)
        proto = Rule(Compound("tmp"), head, body)
        label = Compound(f"r{i}", tuple(Var(v) for v in proto.variables()))
        rules.append(Rule(label, head, body))
    return Program(tuple(rules))
