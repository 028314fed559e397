import itertools
import random

import pytest

from tdl.constructions import build_gadget, build_lower_bound_graph, is_labeled_gadget_embedding
from tdl.counting import Embedding, enumerate_images
from tdl.errors import CapacityError, DomainError, ValidationError
from tdl.extraction import (ExtractionFailure, Sunflower, coherence_constant, coherent_subfamily,
                            conflict_pairs, extract_witness, find_sunflower, is_coherent,
                            is_sunflower, sunflower_constant, upper_bound_threshold)
from tdl.forest import Forest
from tdl.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph


def brute_conflicts(images):
    out = []
    for i, j in itertools.combinations(range(len(images)), 2):
        a, b = images[i].assignment, images[j].assignment
        if any(a[x] == b[y] for x in range(len(a)) for y in range(len(b)) if x != y):
            out.append((i, j))
    return out


P3_IN_C4 = enumerate_images(path_graph(3), cycle_graph(4), 100)


def test_constants():
    assert coherence_constant(2, 2) == 16
    assert sunflower_constant(3, 3) == 49


def test_conflict_examples():
    assert conflict_pairs([Embedding((0, 1)), Embedding((2, 3))]) == []
    assert conflict_pairs([Embedding((1, 3)), Embedding((3, 1))]) == [(0, 1)]
    with pytest.raises(DomainError):
        conflict_pairs([Embedding((0, 1)), Embedding((0, 1, 2))])


def test_p3_in_c4_conflicts_frozen():
    # 24 of the 28 pairs conflict; the 4 coherent pairs share both end
    # assignments and differ only in the centre
    cp = conflict_pairs(P3_IN_C4)
    assert cp == brute_conflicts(P3_IN_C4)
    assert len(cp) == 24
    free = set(itertools.combinations(range(8), 2)) - set(cp)
    for i, j in free:
        a, b = P3_IN_C4[i].assignment, P3_IN_C4[j].assignment
        assert (a[0], a[2]) == (b[0], b[2]) and a[1] != b[1]


def test_conflicts_match_brute_force():
    rng = random.Random(1)
    for _ in range(30):
        images = [Embedding(tuple(rng.sample(range(8), 3))) for _ in range(10)]
        assert conflict_pairs(images) == brute_conflicts(images)


def test_coherent_subfamily_examples():
    disjoint = [Embedding((2 * i, 2 * i + 1)) for i in range(5)]
    assert coherent_subfamily(disjoint, 5) == [0, 1, 2, 3, 4]
    pair = coherent_subfamily(P3_IN_C4, 2)
    assert len(pair) == 2 and is_coherent([P3_IN_C4[i] for i in pair])
    assert coherent_subfamily(P3_IN_C4, 3) is None
    with pytest.raises(CapacityError):
        coherent_subfamily([Embedding((0,))] * 201, 2)


def test_coherence_guarantee_k2():
    rng = random.Random(2)
    for _ in range(50):
        edges = set()
        while len(edges) < 16:
            edges.add(tuple(rng.sample(range(12), 2)))
        assert coherent_subfamily([Embedding(e) for e in edges], 2) is not None


def test_sunflower_examples():
    sf = find_sunflower([{1, 2}, {3, 4}, {5, 6}], 3)
    assert sf.kernel == frozenset() and len(sf.member_indices) == 3
    sf = find_sunflower([{1, 2}, {1, 3}, {1, 4}], 3)
    assert sf.kernel == frozenset({1})
    assert find_sunflower([{1, 2}, {2, 3}, {1, 3}], 3) is None
    with pytest.raises(DomainError):
        find_sunflower([{1}], 1)
    with pytest.raises(ValidationError):
        find_sunflower([{1, 2}, {1, 2}], 2)
    with pytest.raises(ValidationError):
        find_sunflower([{1, 2}, {1}], 2)


def test_is_sunflower_validator():
    fam = [frozenset(x) for x in ({1, 2}, {1, 3}, {2, 3})]
    assert not is_sunflower(fam, Sunflower(frozenset({1}), (0, 1, 2)))
    assert is_sunflower(fam, Sunflower(frozenset({1}), (0, 1)))


def test_sunflower_guarantee_small():
    rng = random.Random(3)
    for _ in range(30):
        fam = rng.sample([frozenset(c) for c in itertools.combinations(range(9), 2)], sunflower_constant(2, 3))
        sf = find_sunflower(fam, 3)
        assert sf is not None and is_sunflower(fam, sf)


def test_witness_p3_in_c4():
    res = extract_witness(path_graph(3), 1, 2, cycle_graph(4), P3_IN_C4)
    assert res.subtree_vertices == [1] and res.kernel_preimage == [0, 2]
    assert res.subtree.n == 1
    gad = build_gadget(res.subtree, 1, 2)
    assert is_labeled_gadget_embedding(gad, res.embedding, cycle_graph(4))
    assert gad.graph == Graph(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
    obj = res.to_json_obj()
    assert obj["embedding"] == {"(1,1)": 0, "(1,2)": 2, "(1,1)*": 3, "(1,2)*": 1}
    assert obj["kernel_preimage"] == [0, 2] and obj["subtree_edges"] == []


def test_witness_k2_matching_fails_before_assembly():
    host = Graph(20, [(2 * i, 2 * i + 1) for i in range(10)])
    images = enumerate_images(path_graph(2), host, 100)
    with pytest.raises(ExtractionFailure) as exc:
        extract_witness(path_graph(2), 1, 2, host, images)
    assert exc.value.stage == "coherence"


def test_witness_short_image_list():
    with pytest.raises(ExtractionFailure) as exc:
        extract_witness(path_graph(3), 1, 2, cycle_graph(4), P3_IN_C4[:1])
    assert exc.value.stage == "bucketing"


def test_witness_rejects_bad_images():
    with pytest.raises(ValidationError):
        extract_witness(path_graph(3), 1, 2, cycle_graph(4), [Embedding((0, 2, 1))])
    with pytest.raises(DomainError):
        extract_witness(path_graph(3), 1, 1, cycle_graph(4), P3_IN_C4)


def test_witness_on_dense_hosts_validates():
    found = 0
    for pattern, s, t, host in [(star_graph(2), 1, 2, complete_graph(6)),
                                (path_graph(2), 1, 2, complete_graph(5)),
                                (Forest(1), 1, 2, complete_graph(4)),
                                (path_graph(3), 2, 2, complete_graph(7))]:
        images = enumerate_images(pattern, host, 150)
        try:
            res = extract_witness(pattern, s, t, host, images)
        except ExtractionFailure:
            continue
        found += 1
        gad = build_gadget(res.subtree, s, t)
        assert is_labeled_gadget_embedding(gad, res.embedding, host)
    assert found >= 1


def test_no_witness_on_degenerate_hosts():
    for pattern in (path_graph(2), path_graph(3), star_graph(3)):
        for s in (1, 2):
            inst = build_lower_bound_graph(pattern, s, 12)
            images = enumerate_images(pattern, inst.graph, 200)
            with pytest.raises(ExtractionFailure):
                extract_witness(pattern, s, s + 1, inst.graph, images)


def test_threshold_report():
    rep = upper_bound_threshold(path_graph(3), 1, 2, cycle_graph(4))
    assert rep.images == 8 and rep.alpha == 2 and rep.rho == 1
    assert rep.c_h >= rep.c_k
    assert not rep.meets_stated
