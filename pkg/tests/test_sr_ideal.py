import pytest

from stacked_sr import graph_core as gc
from stacked_sr import simplicial as sc
from stacked_sr import sr_ideal as sr
from stacked_sr import tree_ideal as ti
from stacked_sr.simplicial import SimplicialComplex

from conftest import heptagon_tree


def mono(*labels):
    return frozenset(labels)


def test_hollow_triangle_ideal():
    assert sr.sr_ideal_of(sc.simplex_boundary("123")).generators == (mono("1", "2", "3"),)


def test_heptagon_ideal_is_missing_diagonals(hept_tri):
    ideal = sr.sr_ideal_of(hept_tri)
    expected = {mono(*d) for d in ("13", "14", "15", "16", "26", "35", "36", "37", "46", "47")}
    assert set(ideal.generators) == expected
    assert sr.complex_of(ideal) == hept_tri


def test_full_simplex_has_zero_ideal():
    assert sr.sr_ideal_of(SimplicialComplex([{"1", "2", "3"}])).generators == ()


def test_unit_ideal_gives_void_complex():
    ideal = sr.SquarefreeMonomialIdeal(["1"], [set()])
    assert ideal.is_unit()
    assert sr.complex_of(ideal).is_void()


def test_ideal_text_round_trip(hept_tri):
    ideal = sr.sr_ideal_of(hept_tri)
    text = sr.ideal_to_text(ideal)
    assert text.splitlines()[0] == "x_1*x_3"
    assert sr.parse_ideal_text(text, ideal.variables) == ideal
    with pytest.raises(ValueError):
        sr.parse_ideal_text("x_1*y_2")


def test_algebra_export(hept_tri):
    out = sr.ideal_to_algebra(sr.sr_ideal_of(hept_tri))
    assert out.startswith("ring R = QQ[x_1, x_2,")
    assert "ideal I = x_1*x_3, x_1*x_4" in out


def test_separation_candidates_heptagon(hept_tri):
    (step,) = sr.separation_candidates(hept_tri, "5")
    assert step.flag_type
    assert {f for f in step.first if len(f) == 1} == {mono("1")}
    assert {f for f in step.second if len(f) == 1} == {mono("3")}
    assert sr.separation_candidates(hept_tri, "1") == []


def test_two_points_have_no_candidates():
    assert sr.separation_candidates(SimplicialComplex([{"1"}, {"2"}]), "1") == []


def test_three_points_split():
    x = SimplicialComplex([{"a"}, {"b"}, {"v"}])
    (step,) = sr.separation_candidates(x, "v")
    y = sr.separate(x, step)
    assert sr.project_ideal(sr.sr_ideal_of(y), {"v.0": "v", "v.1": "v"}) is not None
    assert sr.is_nonzerodivisor(y, "v.0", "v.1")
    assert sr.quotient_by_difference(y, "v.0", "v.1", merged="v") == x


def test_split_at_five(hept_tri):
    (step,) = sr.separation_candidates(hept_tri, "5")
    y = sr.separate(hept_tri, step)
    assert len(y.ground) == 8 and len(y.facets) == 5
    assert sc.is_isomorphic(y, ti.tree_complex(heptagon_tree()))


def test_invalid_step_rejected(hept_tri):
    (step,) = sr.separation_candidates(hept_tri, "5")
    bad = sr.SeparationStep("5", step.first, frozenset(), None, None, False)
    with pytest.raises(sr.PreconditionError):
        sr.separate(hept_tri, bad)


def test_nonzerodivisor_cases():
    assert not sr.is_nonzerodivisor(SimplicialComplex([{"1"}, {"2"}, {"3"}]), "1", "2")
    cone = SimplicialComplex([{"v", "1"}, {"v", "2"}])
    assert sr.is_nonzerodivisor(cone, "v", "1")
    assert sr.is_nonzerodivisor(cone, "v", "2")


def test_cuts_squarefree_cases():
    assert not sr.cuts_squarefree(sc.simplex_boundary("123"), "2", "3")
    x = SimplicialComplex([{"1", "2"}], ground=["1", "2", "9"])
    assert sr.cuts_squarefree(x, "1", "9")


def test_quotient_rules():
    x = SimplicialComplex([{"v1", "v2", "a"}, {"v1", "b"}, {"v2", "c"}])
    y = sr.quotient_by_difference(x, "v1", "v2", merged="v")
    assert set(y.facets) == {mono("v", "a"), mono("b"), mono("c")}


def test_zero_divisor_quotient_rejected():
    with pytest.raises(sr.PreconditionError):
        sr.quotient_by_difference(SimplicialComplex([{"1"}, {"2"}, {"3"}]), "1", "2")


def test_heptagon_join_recovers_triangulation(hept_tri):
    m = sr.separated_model(hept_tri)
    assert m.joins == [("5.0", "5.1")]
    assert sr.is_nonzerodivisor(m.complex, "5.0", "5.1")
    assert sr.cuts_squarefree(m.complex, "5.0", "5.1")
    assert sr.is_regular_forest(m.complex, [("5.0", "5.1")])
    assert sr.replay_joins(m.complex, m.joins) == hept_tri


def test_regular_forest_cases(hept_tri):
    assert sr.is_regular_forest(hept_tri, [])
    two = SimplicialComplex([{"1", "2"}, {"3", "4"}])
    assert sr.is_regular_forest(two, [("1", "3")])
    three = SimplicialComplex([{"1", "2"}, {"3", "4"}, {"5", "6"}])
    assert not sr.is_regular_forest(three, [("1", "3"), ("3", "5")])


def test_separated_model_matches_tree(hept_tri):
    m = sr.separated_model(hept_tri)
    assert gc.canonical_form(m.tree.tree) == gc.canonical_form(heptagon_tree().tree)
    assert m.complex.relabeled(m.vertex_to_evar) == ti.tree_complex(m.tree)
    assert m.joins_json() == '[["5.0", "5.1"]]'


def test_tree_ideal_complex_is_already_separated():
    x = ti.tree_complex(heptagon_tree())
    x = x.relabeled({v: v.name for v in x.ground})
    assert sr.separated_model(x).joins == []


def test_polygon_models_have_dual_trees():
    from stacked_sr.ball import enumerate_polygon_triangulations

    checked = 0
    for n in range(5, 10):
        for tr in enumerate_polygon_triangulations(n)[::7]:
            x = SimplicialComplex(tr.triangles)
            x = x.relabeled({v: str(v) for v in x.ground})
            if x.cone_apex():
                with pytest.raises(sr.PreconditionError):
                    sr.separated_model(x)
                continue
            m = sr.separated_model(x)
            names = {f: "".join(sorted(f)) for f in x.facets}
            dual = sc.hypertree_of(x, names=names)
            dual_tree = gc.Tree(dual.vertices, [tuple(h) for h in dual.hyperedges])
            assert gc.canonical_form(m.tree.tree) == gc.canonical_form(dual_tree)
            assert sr.replay_joins(m.complex, m.joins) == x
            checked += 1
    assert checked > 50


def test_separated_model_preconditions():
    with pytest.raises(sr.PreconditionError):
        sr.separated_model(sc.simplex_boundary("123"))
    with pytest.raises(sr.PreconditionError):
        sr.separated_model(SimplicialComplex([{"1", "2"}, {"1", "3"}]))
