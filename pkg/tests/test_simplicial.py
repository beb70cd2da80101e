import json

import pytest

from stacked_sr import graph_core as gc
from stacked_sr import simplicial as sc
from stacked_sr.simplicial import SimplicialComplex


def fs(*faces):
    return {frozenset(f) for f in faces}


def test_link_of_vertex(hept_tri):
    assert set(hept_tri.link({"5"}).facets) == fs("27", "67", "24")


def test_link_trivial_cases(hept_tri):
    assert hept_tri.link(set()) == hept_tri
    assert hept_tri.link({"1", "3"}).is_void()


def test_deletion_of_neighborhood(hept_tri):
    n5 = hept_tri.neighborhood("5")
    assert n5 == {"2", "4", "5", "6", "7"}
    d = hept_tri.deletion(n5)
    assert set(d.facets) == fs("1", "3")
    assert sorted(map(sorted, d.components())) == [["1"], ["3"]]


def test_restriction_edges(hept_tri):
    assert hept_tri.restriction(hept_tri.ground_set) == hept_tri
    assert hept_tri.restriction(set()).facets == (frozenset(),)


def test_stacking_certificate_from_listed_order(hept_tri):
    order = [frozenset(f) for f in ("127", "257", "567", "245", "234")]
    cert = sc.StackingCertificate(
        tuple(order),
        ((frozenset("27"), "5"), (frozenset("57"), "6"), (frozenset("25"), "4"), (frozenset("24"), "3")),
    )
    assert cert.verify()
    found = sc.is_stacked(hept_tri)
    assert found and found.verify()


def test_single_facet_is_stacked():
    assert sc.is_stacked(SimplicialComplex([{"1", "2", "3"}]))


def test_hollow_triangle_not_stacked():
    result = sc.is_stacked(SimplicialComplex([{"1", "2"}, {"1", "3"}, {"2", "3"}]))
    assert not result
    assert result.reason


def test_hypertree_is_dual_tree(hept_tri):
    names = {f: "".join(sorted(f)) for f in hept_tri.facets}
    h = sc.hypertree_of(hept_tri, names=names)
    assert h.is_ordinary_tree()
    assert set(h.hyperedges) == fs(("127", "257"), ("257", "567"), ("245", "257"), ("234", "245"))


def test_hypertree_small_cases():
    two = SimplicialComplex([{"1", "2", "3"}, {"2", "3", "4"}])
    assert len(sc.hypertree_of(two).hyperedges) == 1
    strip = SimplicialComplex([{"1", "2", "3"}, {"2", "3", "4"}, {"3", "4", "5"}, {"4", "5", "6"}])
    h = sc.hypertree_of(strip, names={f: "".join(sorted(f)) for f in strip.facets})
    assert set(h.hyperedges) == fs(("123", "234"), ("234", "345"), ("345", "456"))


def test_hypertree_with_proper_hyperedge():
    # Three triangles on one edge give a single hyperedge of size 3.
    x = SimplicialComplex([{"1", "2", "3"}, {"1", "2", "4"}, {"1", "2", "5"}])
    assert x.cone_apex() == {"1", "2"}
    h = sc.hypertree_of(x)
    assert len(h.hyperedges) == 1 and len(h.hyperedges[0]) == 3


def test_cone_apex(hept_tri):
    assert hept_tri.cone_apex() == frozenset()
    assert SimplicialComplex([{"1", "2", "3"}]).cone_apex() == {"1", "2", "3"}
    assert SimplicialComplex([{"1", "2"}, {"1", "3"}]).cone_apex() == {"1"}
    assert sc.is_cone(SimplicialComplex([{"1", "2"}, {"1", "3"}]))


def test_euler_characteristic():
    assert sc.simplex_boundary("123").euler_characteristic() == 0
    assert SimplicialComplex([{"1", "2", "3"}]).euler_characteristic() == 1
    assert sc.simplex_boundary("1234").euler_characteristic() == 2


def test_face_counts(hept_tri):
    assert hept_tri.face_counts() == [1, 7, 11, 5]
    assert len(hept_tri.faces()) == 24


def test_facets_are_maximal():
    x = SimplicialComplex([{"1", "2"}, {"1"}, {"1", "2", "3"}])
    assert x.facets == (frozenset("123"),)


def test_void_and_empty_complexes():
    void = SimplicialComplex([])
    assert void.is_void() and not void.faces()
    empty = SimplicialComplex([set()])
    assert not empty.is_void() and empty.dimension() == -1


def test_json_round_trip(hept_tri, tmp_path):
    f = tmp_path / "x.json"
    f.write_text(json.dumps(hept_tri.to_dict()))
    assert sc.load_complex(f) == hept_tri
    assert hept_tri.to_facet_text().splitlines()[0] == "1 2 7"


def test_isomorphism(hept_tri):
    other = hept_tri.relabeled({v: f"y{v}" for v in hept_tri.ground})
    iso = sc.find_isomorphism(hept_tri, other)
    assert iso is not None and hept_tri.relabeled(iso) == other
    assert not sc.is_isomorphic(hept_tri, sc.simplex_boundary("1234"))


def test_malformed_complex_document():
    with pytest.raises(ValueError):
        sc.complex_from_dict({"facet": []})
