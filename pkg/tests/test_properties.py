"""Randomized invariants over trees, partitions and complexes."""

from hypothesis import assume, given, settings, strategies as st

from stacked_sr import ball, graph_core as gc, partitions as pt, regular as rg
from stacked_sr import simplicial as sc, sr_ideal as sr, tree_ideal as ti
from stacked_sr.linalg import in_span, span_contains
from stacked_sr.simplicial import SimplicialComplex


@st.composite
def trees(draw, lo=2, hi=8):
    n = draw(st.integers(min_value=lo, max_value=hi))
    seq = draw(st.lists(st.integers(min_value=0, max_value=n - 1), min_size=n - 2, max_size=n - 2))
    labels = [str(i) for i in range(1, n + 1)]
    edges = gc.prufer_to_edges(seq, labels) if n > 2 else [("1", "2")]
    t = gc.Tree(labels, edges)
    flips = draw(st.sets(st.sampled_from(t.edge_ids)))
    return gc.DirectedTree(t, {e: (t.ends(e)[0] if e in flips else t.ends(e)[1]) for e in t.edge_ids})


@st.composite
def vertex_partitions(draw, t):
    colors = draw(st.lists(st.integers(0, 3), min_size=len(t.vertices), max_size=len(t.vertices)))
    blocks = {}
    for v, c in zip(t.vertices, colors):
        blocks.setdefault(c, []).append(v)
    return pt.SetPartition(blocks.values())


@st.composite
def tree_and_partition(draw):
    t = draw(trees())
    return t, draw(vertex_partitions(t))


complexes = st.lists(
    st.sets(st.sampled_from("123456789"), min_size=1, max_size=4), min_size=1, max_size=6
).map(SimplicialComplex)


@given(complexes)
@settings(max_examples=150, deadline=None)
def test_sr_round_trip(x):
    assert sr.complex_of(sr.sr_ideal_of(x)) == x


@given(complexes)
@settings(max_examples=100, deadline=None)
def test_link_faces_are_faces(x):
    for f in x.facets:
        v = min(f)
        lk = x.link({v})
        assert all(g | {v} in x for g in lk.faces())


@given(trees())
@settings(max_examples=60, deadline=None)
def test_facet_formula(t):
    assert ti.check_facet_formula(t)
    x = ti.tree_complex(t)
    assert len(x.facets) == len(t.vertices)
    assert sc.is_stacked(x) and not x.cone_apex()


@given(trees(), st.data())
@settings(max_examples=60, deadline=None)
def test_reorientation_is_relabeling(t, data):
    flipped = data.draw(st.sets(st.sampled_from(t.edge_ids)))
    t2, phi = ti.reorient(t, flipped)
    assert ti.tree_ideal(t).relabeled(phi) == ti.tree_ideal(t2)


@given(tree_and_partition())
@settings(max_examples=80, deadline=None)
def test_partition_basis_round_trip(tq):
    t, q = tq
    basis = rg.space_of_vertex_partition(q, t)
    assert len(basis.differences) == q.rank()
    assert rg.partition_of_basis(basis.edges(), t) == q
    assert rg.is_regular_basis(basis.edges(), t)


@given(tree_and_partition())
@settings(max_examples=80, deadline=None)
def test_squarefree_iff_independent(tq):
    t, q = tq
    independent = all(t.tree.is_independent_vertex_set(b) for b in q.blocks)
    assert rg.quotient_is_squarefree(q, t) == independent
    complex_, _ = rg.stepwise_quotient(q, t)
    assert (complex_ is not None) == independent


@given(tree_and_partition())
@settings(max_examples=60, deadline=None)
def test_endpoint_differences_in_span(tq):
    t, q = tq
    vectors = rg.space_of_vertex_partition(q, t).vectors()
    for b in q.blocks:
        for v in b:
            for w in b:
                inner = t.path(v, w).vertices[1:-1]
                if v != w and not any(x in b for x in inner):
                    assert in_span(ti.difference_of_pair(t, v, w), vectors)


@given(tree_and_partition())
@settings(max_examples=60, deadline=None)
def test_order_is_span_containment(tq):
    t, q = tq
    for qp in rg.interval_below(q, t):
        assert rg.partition_leq(qp, q, t)
        assert span_contains(
            rg.space_of_vertex_partition(q, t).vectors(),
            rg.space_of_vertex_partition(qp, t).vectors(),
        )


@given(trees(), st.data())
@settings(max_examples=80, deadline=None)
def test_bijection_round_trip(t, data):
    colors = data.draw(st.lists(st.integers(0, 2), min_size=len(t.edge_ids), max_size=len(t.edge_ids)))
    blocks = {}
    for e, c in zip(t.edge_ids, colors):
        blocks.setdefault(c, []).append(e)
    p = pt.SetPartition(blocks.values())
    q = pt.edge_to_vertex_partition(p, t.tree)
    assert len(q) == len(p) + 1
    assert all(t.tree.is_independent_vertex_set(b) for b in q.blocks)
    assert pt.vertex_to_edge_partition(q, t.tree) == p


@given(trees(hi=7), st.data())
@settings(max_examples=60, deadline=None)
def test_ball_boundary_is_sphere(t, data):
    colors = data.draw(st.lists(st.integers(0, 3), min_size=len(t.edge_ids), max_size=len(t.edge_ids)))
    blocks = {}
    for e, c in zip(t.edge_ids, colors):
        blocks.setdefault(c, []).append(e)
    p = pt.SetPartition(blocks.values())
    assume(ball.is_independent_edge_partition(p, t.tree))
    qc = ball.quotient_complex(t, p)
    assert ball.quotient_hypertree(t, p) == gc.Hypertree.from_tree(t.tree)
    b = ball.boundary_ideal(t, p)
    if not b.degenerate:
        assert ball.is_sphere(b.complex, qc.dimension() - 1)


@given(trees(lo=3))
@settings(max_examples=60, deadline=None)
def test_difference_additivity(t):
    vs = t.vertices
    for v in vs:
        for u in vs:
            for w in vs:
                if len({v, u, w}) == 3 and gc.is_nonaligned(t.tree, (v, u, w)):
                    total = {}
                    for a, b in ((v, u), (u, w)):
                        for x, c in ti.difference_of_pair(t, a, b).items():
                            total[x] = total.get(x, 0) + c
                    assert {x: c for x, c in total.items() if c} == ti.difference_of_pair(t, v, w)
