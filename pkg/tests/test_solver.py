import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from argselect.arguments import abstract_framework
from argselect.kb import Compound, Literal
from argselect.solver import (
    Label,
    SizeLimitError,
    accept,
    enumerate_admissible,
    enumerate_preferred,
    grounded_extension,
    grounded_labelling,
    is_admissible,
    is_conflict_free,
)

from oracles import admissible_sets, least_complete, naive_grounded, random_framework

LIME_AF = abstract_framework(["r1", "r2", "r3", "r5"], [("r2", "r1"), ("r3", "r2"), ("r5", "r3")])


def test_lime_af_labelling():
    lab = grounded_labelling(LIME_AF)
    assert lab.in_set == {"r2", "r5"}
    assert lab.out_set == {"r1", "r3"}
    assert lab.undec_set == set()
    assert [(s.argument, s.label, s.cites, s.round) for s in lab.steps] == [
        ("r5", Label.IN, (), 1),
        ("r3", Label.OUT, ("r5",), 1),
        ("r2", Label.IN, ("r3",), 2),
        ("r1", Label.OUT, ("r2",), 2),
    ]


def test_single_unattacked():
    assert grounded_labelling(abstract_framework(["a"], [])).in_set == {"a"}


def test_two_cycle_undecided():
    lab = grounded_labelling(abstract_framework(["a", "b"], [("a", "b"), ("b", "a")]))
    assert lab.undec_set == {"a", "b"}
    assert [s.label for s in lab.steps] == [Label.UNDEC, Label.UNDEC]


def test_self_attack():
    lab = grounded_labelling(abstract_framework(["a", "b"], [("a", "a"), ("a", "b")]))
    assert lab.undec_set == {"a", "b"}


def test_conflict_free():
    assert is_conflict_free(LIME_AF, {"r2", "r5"})
    assert is_conflict_free(LIME_AF, set())
    assert not is_conflict_free(abstract_framework(["a", "b"], [("a", "b")]), {"a", "b"})


def test_admissible():
    assert is_admissible(LIME_AF, {"r2", "r5"})
    assert is_admissible(LIME_AF, set())
    assert not is_admissible(LIME_AF, {"r1"})
    assert not is_admissible(LIME_AF, {"r2"})


def test_enumerate_lime_af():
    found = [sorted(e.members) for e in enumerate_admissible(LIME_AF)]
    # frozen from a by-hand check of all 16 subsets
    assert found == [[], ["r5"], ["r2", "r5"]]
    assert {frozenset(x) for x in found} == admissible_sets(LIME_AF.arguments, LIME_AF.relation)


def test_enumerate_edgeless():
    af = abstract_framework([f"x{i}" for i in range(5)], [])
    assert len(enumerate_admissible(af)) == 2**5


def test_enumerate_two_cycle():
    af = abstract_framework(["a", "b"], [("a", "b"), ("b", "a")])
    assert [sorted(e.members) for e in enumerate_admissible(af)] == [[], ["a"], ["b"]]
    assert [sorted(e.members) for e in enumerate_preferred(af)] == [["a"], ["b"]]


def test_size_guard():
    af = abstract_framework([f"x{i}" for i in range(21)], [])
    with pytest.raises(SizeLimitError):
        enumerate_admissible(af)


def test_accept_abstract():
    v = accept(LIME_AF, "r2")
    assert v.accepted and v.supporting_arguments == ("r2",)
    assert not accept(LIME_AF, "r1").accepted
    with pytest.raises(ValueError):
        accept(LIME_AF, "r2", mode="ideal")


def test_accept_literal_on_empty():
    v = accept(abstract_framework([], []), Literal(Compound("use", ())))
    assert not v.accepted and v.position == ()


def check_trace(af, lab):
    when = {s.argument: s.index for s in lab.steps}
    for s in lab.steps:
        if s.label is Label.OUT:
            (cited,) = s.cites
            assert (cited, s.argument) in af.relation
            assert lab[cited] is Label.IN and when[cited] < s.index
        elif s.label is Label.IN:
            assert set(s.cites) == set(af.attackers[s.argument])
            assert all(lab[c] is Label.OUT and when[c] < s.index for c in s.cites)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_grounded_matches_oracles(seed):
    rng = random.Random(seed)
    af, nodes, rel = random_framework(rng, max_args=8)
    lab = grounded_labelling(af)
    assert lab.in_set == least_complete(nodes, rel)
    assert {a: str(l) for a, l in lab.assignment.items()} == naive_grounded(nodes, rel, rng)
    assert is_conflict_free(af, lab.in_set) and is_admissible(af, lab.in_set)
    check_trace(af, lab)
    assert grounded_extension(af).members == lab.in_set


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_admissible_enumeration_matches_definition(seed):
    af, nodes, rel = random_framework(random.Random(seed), max_args=7)
    found = {e.members for e in enumerate_admissible(af)}
    assert found == admissible_sets(nodes, rel)
    assert all(is_admissible(af, s) for s in found)
    preferred = {e.members for e in enumerate_preferred(af)}
    assert preferred == {s for s in found if not any(s < o for o in found)}
