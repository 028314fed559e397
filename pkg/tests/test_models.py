import itertools
import random

import pytest

from tdl._mis import max_independent_set
from tdl.constructions import build_gadget
from tdl.errors import CapacityError, DomainError
from tdl.forest import alpha_s
from tdl.generators import gnp, random_forest
from tdl.graph import (Graph, complete_bipartite, complete_graph, cycle_graph, is_connected_subset,
                       path_graph, star_graph)
from tdl.models import (connected_sets, enumerate_separations, find_pq_model, flap_number,
                        independent)
from tdl.shortcuts import verify_model


# -- independent exhaustive oracles ---------------------------------------------

def exhaustive_model_exists(g, s, t, p, q):
    """Try every assignment of vertices to s+t branch-set labels or to nothing."""
    labels = s + t
    for assign in itertools.product(range(labels + 1), repeat=g.n):
        sets = [[v for v in range(g.n) if assign[v] == i] for i in range(labels)]
        if any(not x for x in sets):
            continue
        if any(len(x) > p for x in sets[:s]) or any(len(y) > q for y in sets[s:]):
            continue
        if not all(is_connected_subset(g, x) for x in sets):
            continue
        if all(any(g.has_edge(a, b) for a in x for b in y) for x in sets[:s] for y in sets[s:]):
            return True
    return False


def brute_flap(h, s):
    seps = enumerate_separations(h, s)
    if not seps:
        return 1
    conflicts = [(i, j) for i, j in itertools.combinations(range(len(seps)), 2)
                 if not independent(seps[i], seps[j])]
    return len(max_independent_set(len(seps), conflicts))


# -- model search -----------------------------------------------------------------

def test_find_model_examples():
    res = find_pq_model(complete_bipartite(2, 3), 2, 3, 1, 1)
    assert res.status == "found"
    assert res.model.left == ((0,), (1,)) and res.model.right == ((2,), (3,), (4,))
    res = find_pq_model(cycle_graph(6), 3, 3, 1, 1)
    assert res.status == "none"
    gad = build_gadget(Graph(1), 2, 3).graph
    res = find_pq_model(gad, 3, 3, 1, 1)
    assert res.status == "found" and verify_model(gad, res.model, 3, 3, 1, 1)


def test_find_model_budget_gives_unknown():
    res = find_pq_model(complete_graph(8), 4, 4, 2, 2, budget=3)
    assert res.status == "unknown" and res.model is None
    with pytest.raises(DomainError):
        find_pq_model(path_graph(3), 0, 1, 1, 1)


def test_connected_sets_order():
    sets = connected_sets(path_graph(3), 2)
    assert sets == [frozenset({0}), frozenset({1}), frozenset({2}), frozenset({0, 1}), frozenset({1, 2})]


def test_find_model_against_exhaustive_oracle():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(2, 7)
        g = gnp(n, rng.uniform(0.2, 0.7), rng)
        s, t = rng.randint(1, 2), rng.randint(1, 3)
        p, q = rng.randint(1, 2), rng.randint(1, 2)
        res = find_pq_model(g, s, t, p, q)
        assert res.status in ("found", "none")
        if res.status == "found":
            assert verify_model(g, res.model, s, t, p, q)
        else:
            assert not exhaustive_model_exists(g, s, t, p, q)


def has_kst_subgraph(g, s, t):
    for left in itertools.combinations(range(g.n), s):
        common = set(range(g.n)) - set(left)
        for v in left:
            common &= g.neighbor_set(v)
        if len(common) >= t:
            return True
    return False


def test_singleton_verdicts_on_nine_vertices():
    rng = random.Random(12)
    for _ in range(40):
        g = gnp(9, rng.uniform(0.2, 0.6), rng)
        s, t = rng.randint(1, 3), rng.randint(1, 4)
        res = find_pq_model(g, s, t, 1, 1)
        assert (res.status == "found") == has_kst_subgraph(g, s, t)


# -- separations and flaps ---------------------------------------------------------

def test_separation_examples():
    assert enumerate_separations(Graph(1), 1) == []
    assert enumerate_separations(path_graph(2), 1) == []
    seps = enumerate_separations(path_graph(3), 1)
    assert any(sep.a_vertices & sep.b_vertices == {1} and sep.order == 1 for sep in seps)
    with pytest.raises(CapacityError):
        enumerate_separations(Graph(13), 1)


def test_separations_are_valid_and_complete_for_tiny_graphs():
    rng = random.Random(8)
    for _ in range(15):
        h = gnp(rng.randint(1, 5), 0.5, rng)
        for s in (1, 2):
            seps = enumerate_separations(h, s)
            assert len(set(seps)) == len(seps)
            assert all(sep.is_valid(h) and sep.order <= s for sep in seps)
            # count every (A-vertex-set, B-vertex-set, edge split) directly
            edges = h.edges()
            expected = 0
            for labels in itertools.product(range(3), repeat=h.n):       # 0: A only, 1: B only, 2: both
                a = {v for v in range(h.n) if labels[v] != 1}
                b = {v for v in range(h.n) if labels[v] != 0}
                if len(a & b) > s or not a - b or not b - a:
                    continue
                if any({labels[u], labels[v]} == {0, 1} for u, v in edges):
                    continue
                free = sum(1 for u, v in edges if labels[u] == 2 and labels[v] == 2)
                expected += 2 ** free
            assert len(seps) == expected


def test_flap_examples():
    assert flap_number(Graph(1), 1).value == 1
    assert flap_number(Graph(1), 1).witness == []
    assert flap_number(path_graph(3), 1).value == 2
    assert flap_number(star_graph(3), 1).value == 3


def test_flap_witness_pairwise_independent():
    rng = random.Random(9)
    for _ in range(20):
        h = gnp(rng.randint(2, 8), 0.4, rng)
        res = flap_number(h, 2)
        for x, y in itertools.combinations(res.witness, 2):
            assert independent(x, y) and independent(y, x)
        assert all(sep.is_valid(h) for sep in res.witness)


def test_flap_matches_brute_force_on_tiny_graphs():
    rng = random.Random(10)
    for i in range(40):
        n = rng.randint(1, 5)
        h = gnp(n, rng.uniform(0.2, 0.8), rng) if i % 2 else random_forest(n, rng)
        for s in (1, 2):
            assert flap_number(h, s).value == brute_flap(h, s)


def test_flap_equals_alpha_on_forests():
    rng = random.Random(11)
    for _ in range(40):
        f = random_forest(rng.randint(1, 10), rng)
        for s in (1, 2):
            assert flap_number(f, s).value == alpha_s(f, s).value
