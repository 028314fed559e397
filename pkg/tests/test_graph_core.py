import itertools
import json
import math
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tdl.codecs import (GRAPH6_MAX_N, _encode_n, from_graph6, parse_graph, serialize_graph, to_graph6,
                        to_json_obj)
from tdl.errors import CapacityError, DomainError, ParseError, ValidationError
from tdl.generators import gnp, random_spanning_tree_of_complete
from tdl.graph import (Graph, complete_graph, contract_partition, cycle_graph, degeneracy, density,
                       diameter, disjoint_union, find_cycle, is_forest, path_graph, star_graph)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


# -- Graph invariants ---------------------------------------------------------

def test_graph_rejects_loops_duplicates_and_range():
    with pytest.raises(ValidationError):
        Graph(2, [(0, 0)])
    with pytest.raises(ValidationError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValidationError):
        Graph(2, [(0, 2)])


@given(graphs())
def test_graph_invariants(g):
    for v in range(g.n):
        nb = g.neighbors(v)
        assert list(nb) == sorted(set(nb))
        assert v not in nb
        assert all(v in g.neighbors(w) for w in nb)
    assert g.edge_count * 2 == sum(g.degrees())


# -- codecs ------------------------------------------------------------------

def test_graph6_B_underscore_is_one_edge_on_three_vertices():
    # "B" encodes n=3; "_" is 011110 whose first bit is the (0,1) slot
    g = from_graph6("B_")
    assert g.n == 3 and g.edges() == [(0, 1)]
    assert g == Graph(3, [(0, 1)])
    assert nx.from_graph6_bytes(b"B_").number_of_edges() == 1


def test_graph6_empty_two_vertex_graph():
    assert to_graph6(Graph(2)) == "A?"
    assert from_graph6("A?") == Graph(2)


def test_json_triangle_and_loop():
    assert parse_graph('{"n":3,"edges":[[0,1],[1,2],[0,2]]}') == complete_graph(3)
    with pytest.raises(ValidationError):
        parse_graph('{"n":2,"edges":[[0,0]]}')


def test_json_serialize_examples():
    assert json.loads(serialize_graph(complete_graph(3))) == {"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}
    assert json.loads(serialize_graph(Graph(0))) == {"n": 0, "edges": []}


def test_parse_errors_name_offsets():
    with pytest.raises(ParseError) as exc:
        parse_graph('{"n": 3, "edges": [[0,1],', "json")
    assert exc.value.offset > 0
    with pytest.raises(ParseError) as exc:
        from_graph6("B\x20")
    assert exc.value.offset == 1
    with pytest.raises(ParseError):
        from_graph6("B_?")          # trailing byte


def test_graph6_capacity():
    # building a graph that large is impractical, so exercise the order encoder
    assert _encode_n(GRAPH6_MAX_N).startswith("~~")
    with pytest.raises(CapacityError):
        _encode_n(GRAPH6_MAX_N + 1)


def test_graph6_header_accepted():
    assert from_graph6(">>graph6<<B_") == Graph(3, [(0, 1)])


@settings(max_examples=150)
@given(graphs(max_n=50))
def test_round_trip_both_formats(g):
    for fmt in ("json", "graph6"):
        assert parse_graph(serialize_graph(g, fmt), fmt) == g


def test_graph6_matches_networkx():
    rng = random.Random(11)
    for n in (0, 1, 2, 5, 12, 40, 63, 70):
        g = gnp(n, 0.3, rng)
        ref = nx.Graph()
        ref.add_nodes_from(range(n))
        ref.add_edges_from(g.edges())
        assert to_graph6(g) == nx.to_graph6_bytes(ref, header=False).decode().strip()
        back = from_graph6(nx.to_graph6_bytes(ref, header=False).decode().strip())
        assert back == g


def test_random_round_trip_12():
    g = gnp(12, 0.4, random.Random(5))
    assert parse_graph(serialize_graph(g)) == g


# -- degeneracy / density ---------------------------------------------------

def _brute_degeneracy(g):
    best = 0
    for r in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), r):
            h, _ = g.induced_subgraph(sub)
            best = max(best, h.min_degree())
    return best


def test_degeneracy_examples():
    assert degeneracy(complete_graph(3))[0] == 2
    assert degeneracy(star_graph(5))[0] == 1
    with pytest.raises(DomainError):
        degeneracy(Graph(0))


def test_degeneracy_against_subgraph_oracle():
    rng = random.Random(1)
    for _ in range(20):
        g = gnp(rng.randint(1, 12), 0.3, rng)
        k, order = degeneracy(g)
        assert sorted(order) == list(range(g.n))
        assert k == _brute_degeneracy(g)
        assert k <= g.max_degree()


def test_degeneracy_order_realises_k():
    g = gnp(12, 0.3, random.Random(2))
    k, order = degeneracy(g)
    alive = set(range(g.n))
    for v in order:
        assert len(g.neighbor_set(v) & alive) <= k
        alive.discard(v)


def test_forest_degeneracy_is_one():
    rng = random.Random(3)
    for _ in range(10):
        t = random_spanning_tree_of_complete(rng.randint(2, 15), rng)
        assert degeneracy(t)[0] == 1


def test_density():
    assert density(complete_graph(3)) == 1
    assert density(path_graph(4)) == Fraction(3, 4)
    with pytest.raises(DomainError):
        density(Graph(0))


# -- contraction, diameter, cycles ------------------------------------------

def test_contract_partition_examples():
    assert contract_partition(complete_graph(3), [[0, 1]]) == complete_graph(2)
    with pytest.raises(ValidationError):
        contract_partition(path_graph(3), [[0, 2]])
    with pytest.raises(ValidationError):
        contract_partition(path_graph(3), [[0, 1], [1, 2]])


@given(graphs(max_n=9))
def test_singleton_contraction_is_identity(g):
    assert contract_partition(g, [[v] for v in range(g.n)]) == g


def test_contraction_never_raises_diameter():
    rng = random.Random(4)
    checked = 0
    while checked < 20:
        g = gnp(8, 0.4, rng)
        if not g.is_connected():
            continue
        part = [0] + [w for w in g.neighbors(0)][:1]
        assert diameter(contract_partition(g, [part])) <= diameter(g)
        checked += 1


def test_diameter_examples():
    assert diameter(complete_graph(3)) == 1
    assert diameter(path_graph(4)) == 3
    assert diameter(disjoint_union(path_graph(2), path_graph(2))) == math.inf


def test_is_forest_and_cycle_witness():
    assert is_forest(path_graph(4))
    assert not is_forest(complete_graph(3))
    assert find_cycle(complete_graph(3)) == [0, 1, 2]
    cyc = find_cycle(cycle_graph(6).with_edges([(0, 3)]))
    assert all(cycle_graph(6).with_edges([(0, 3)]).has_edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
    rng = random.Random(8)
    assert is_forest(random_spanning_tree_of_complete(8, rng))


def test_json_schema_rejects_garbage():
    for bad in ('[]', '{"n": -1, "edges": []}', '{"n": 2, "edges": [[0]]}', '{"n": 2}'):
        with pytest.raises(ValidationError):
            parse_graph(bad)
    assert to_json_obj(path_graph(2)) == {"n": 2, "edges": [[0, 1]]}
