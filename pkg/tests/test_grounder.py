import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argselect.grounder import GroundingError, collect_constants, ground_program, ground_rule
from argselect.kb import Const, Program, print_program
from argselect.parser import parse_program, parse_query
from argselect.validation import validate_program

from programs import random_program


def labels(gp):
    return [str(r.label) for r in gp.rules]


def test_listing_constants(listing_kb):
    assert collect_constants(listing_kb) == ("counterfactual", "lime")


def test_constants_from_bindings_only():
    assert collect_constants(Program(), {"X": Const("lime")}) == ("lime",)


def test_constants_with_extra_fact(listing_kb):
    extra = parse_program("rule(f7, is_stable(X = shap), []).")
    prog = Program(listing_kb.rules + extra.rules)
    assert collect_constants(prog) == ("counterfactual", "lime", "shap")


def test_ground_rule_with_binding(listing_kb):
    r1 = listing_kb.rules[0]
    (inst,) = ground_rule(r1, ("counterfactual", "lime"), {"X": Const("lime")})
    assert str(inst) == "rule(r1(lime), use(lime), [is_sparse(lime)])."


def test_ground_fact_unchanged(listing_kb):
    f1 = listing_kb.rules[8]
    assert ground_rule(f1, ("counterfactual", "lime"), {"X": Const("lime")}) == [f1]


def test_ground_rule_enumerates_domain(listing_kb):
    out = ground_rule(listing_kb.rules[0], ("counterfactual", "lime"))
    assert [str(r.label) for r in out] == ["r1(counterfactual)", "r1(lime)"]


def test_binding_outside_domain_extends_it(listing_kb):
    (inst,) = ground_rule(listing_kb.rules[0], ("lime",), {"X": Const("shap")})
    assert str(inst.label) == "r1(shap)"


def test_ground_program_for_lime_query(listing_kb):
    gp = ground_program(listing_kb, parse_query("neg(use(X=lime))"))
    assert labels(gp) == [
        "r1(lime)", "r2(lime)", "r3(lime)", "r4(lime)", "r5(lime)",
        "pr1(lime)", "pr2(lime)", "pr3(lime)",
        "f1", "f2", "f3", "f4", "f5", "f6",
    ]
    assert gp.origin["pr1(lime)"] == ("pr1(X)", {"X": "lime"})
    assert gp.origin["f3"] == ("f3", {})
    pr1 = gp.rules[5]
    assert str(pr1.head) == "prefer(r2(lime), r1(lime))"


def test_ground_program_for_counterfactual_query(listing_kb):
    gp = ground_program(listing_kb, parse_query("use(X=counterfactual)"))
    assert "r1(counterfactual)" in labels(gp)
    assert "pr3(counterfactual)" in labels(gp)
    assert "r1(lime)" not in labels(gp)


def test_unbound_query_grounds_everything(listing_kb):
    gp = ground_program(listing_kb, parse_query("use(lime)"))
    assert len(gp) == 8 * 2 + 6
    for rule in gp.rules:
        assert rule.head.is_ground() and all(b.is_ground() for b in rule.body)


def test_empty_program():
    gp = ground_program(Program(), parse_query("use(lime)"))
    assert len(gp) == 0
    assert gp.domain == ("lime",)


def test_cap():
    prog = parse_program("rule(r(X, Y, Z), p(X, Y, Z), [q(X), q(Y), q(Z)]). rule(f, q(a), []). rule(g, q(b), []).")
    assert len(ground_program(prog)) == 8 + 2
    with pytest.raises(GroundingError):
        ground_program(prog, cap=9)


def brute_force_count(program, domain):
    # independent recount: each schema contributes |domain| ** (number of distinct variables)
    total = 0
    for rule in program.rules:
        names = set(re_vars(print_program(Program((rule,)))))
        total += len(domain) ** len(names)
    return total


def re_vars(text):
    import re

    return re.findall(r"\b[A-Z][a-zA-Z0-9_]*", text)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_grounding_is_exhaustive(seed):
    prog = random_program(random.Random(seed), max_rules=5)
    if not validate_program(prog).ok:
        return
    gp = ground_program(prog)
    assert len(gp) == brute_force_count(prog, gp.domain)
    # every instance is variable-free and uses only domain constants
    for rule in gp.rules:
        assert not re_vars(str(rule))
        assert set(rule.constants()) <= set(gp.domain)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1), st.sampled_from(["a", "b", "lime"]))
def test_grounding_commutes_with_binding(seed, const):
    prog = random_program(random.Random(seed), max_rules=5)
    if not validate_program(prog).ok:
        return
    domain = set(collect_constants(prog)) | {const}
    full = ground_program(prog, bindings={"Q": Const(const)})  # Q never used: just extends the domain
    bound = ground_program(prog, bindings={"X": Const(const)})
    expected = []
    for schema in prog.rules:
        for rule in full.rules:
            origin_label, subst = full.origin[str(rule.label)]
            if origin_label == str(schema.label) and subst.get("X", const) == const:
                expected.append(rule)
    assert list(bound.rules) == expected
    assert set(full.domain) == domain


def test_enumeration_matches_product():
    prog = parse_program("rule(r(X, Y), p(X, Y), [q(X)]). rule(f(a), q(a), []). rule(g, q(b), []).")
    gp = ground_program(prog)
    expected = {f"r({x}, {y})" for x, y in itertools.product("ab", repeat=2)}
    assert {str(r.label) for r in gp.rules if r.label.functor == "r"} == expected
