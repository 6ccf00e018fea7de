"""Definition-level reference checks, written without the solver's code paths."""

import itertools
import random

from argselect.arguments import abstract_framework


def subsets(items):
    items = list(items)
    for k in range(len(items) + 1):
        yield from itertools.combinations(items, k)


def conflict_free(rel, s):
    return not any((a, b) in rel for a in s for b in s)


def defends(rel, s, a, nodes):
    attackers = [b for b in nodes if (b, a) in rel]
    return all(any((c, b) in rel for c in s) for b in attackers)


def admissible(rel, s, nodes):
    return conflict_free(rel, s) and all(defends(rel, s, a, nodes) for a in s)


def complete_extensions(nodes, rel):
    out = []
    for s in subsets(nodes):
        s = set(s)
        if not conflict_free(rel, s):
            continue
        defended = {a for a in nodes if defends(rel, s, a, nodes)}
        if defended == s:
            out.append(frozenset(s))
    return out


def least_complete(nodes, rel):
    """The complete extension contained in all others."""
    exts = complete_extensions(nodes, rel)
    least = [e for e in exts if all(e <= o for o in exts)]
    assert len(least) == 1
    return least[0]


def admissible_sets(nodes, rel):
    return {frozenset(s) for s in subsets(nodes) if admissible(rel, set(s), nodes)}


def naive_grounded(nodes, rel, rng):
    """Label until stable, visiting arguments in a random order each sweep."""
    lab = {}
    changed = True
    while changed:
        changed = False
        order = list(nodes)
        rng.shuffle(order)
        for a in order:
            if a in lab:
                continue
            attackers = [b for b in nodes if (b, a) in rel]
            if any(lab.get(b) == "IN" for b in attackers):
                lab[a] = "OUT"
                changed = True
            elif all(lab.get(b) == "OUT" for b in attackers):
                lab[a] = "IN"
                changed = True
    return {a: lab.get(a, "UNDEC") for a in nodes}


def random_framework(rng: random.Random, max_args=10, density=None):
    n = rng.randint(0, max_args)
    nodes = [f"a{i}" for i in range(n)]
    p = rng.random() if density is None else density
    rel = {(a, b) for a in nodes for b in nodes if rng.random() < p * 0.5}
    return abstract_framework(nodes, rel), nodes, rel
