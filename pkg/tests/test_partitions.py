import json

import pytest

from stacked_sr import graph_core as gc
from stacked_sr import partitions as pt
from stacked_sr.partitions import SetPartition

from conftest import branching_tree


def edge_block(t, *pairs):
    return frozenset(t.edge_between(u, w) for u, w in pairs)


def test_path_vertex_to_edge():
    t = gc.path_tree(6)
    q = SetPartition([["1", "3", "5"], ["2", "6"], ["4"]])
    p = pt.vertex_to_edge_partition(q, t)
    assert set(p.blocks) == {
        edge_block(t, ("3", "4"), ("4", "5")),
        edge_block(t, ("1", "2"), ("2", "3"), ("5", "6")),
    }


def test_heptagon_vertex_to_edge(hept):
    q = SetPartition([["1", "5"], ["2"], ["3"], ["4"]])
    assert pt.vertex_to_edge_partition(q, hept.tree) == SetPartition([["a", "d"], ["b"], ["c"]])


def test_bipartition_gives_one_edge_block():
    for t in gc.tree_shapes(6):
        (q,) = pt.enumerate_independent_vertex_partitions(t, 2)
        assert len(pt.vertex_to_edge_partition(q, t)) == 1


def test_branching_edge_to_vertex():
    t = branching_tree()
    red = edge_block(t, ("5", "6"), ("8", "9"), ("9", "10"))
    p = SetPartition([red, set(t.edge_ids) - red])
    q = pt.edge_to_vertex_partition(p, t)
    assert q == SetPartition([["1", "3", "5", "8", "10"], ["2", "4", "7"], ["6", "9"]])


def test_short_path_edge_to_vertex():
    t = gc.path_tree(3)
    assert pt.edge_to_vertex_partition(SetPartition([["a"], ["b"]]), t) == SetPartition.singletons("123")
    assert pt.edge_to_vertex_partition(SetPartition([["a", "b"]]), t) == SetPartition([["1", "3"], ["2"]])


def test_dependent_block_is_named(hept):
    with pytest.raises(pt.DependentBlockError) as info:
        pt.vertex_to_edge_partition(SetPartition([["1", "2"], ["3", "4", "5"]]), hept.tree)
    assert "{1,2}" in str(info.value)


def test_seed_order_does_not_matter():
    t = branching_tree()
    q = SetPartition([["1", "3", "5", "8", "10"], ["2", "4", "7"], ["6", "9"]])
    pairs = pt.vertex_seed_pairs(q, t)
    forward = pt.vertex_to_edge_partition(q, t)
    assert pt.vertex_to_edge_partition(q, t, order=range(len(pairs))[::-1]) == forward


def test_independent_vertex_partitions():
    for t in gc.tree_shapes(7):
        assert len(pt.enumerate_independent_vertex_partitions(t, 2)) == 1
    assert pt.enumerate_independent_vertex_partitions(gc.path_tree(3), 3) == [SetPartition.singletons("123")]
    (q,) = pt.enumerate_independent_vertex_partitions(gc.star_tree(4), 2)
    assert q == SetPartition([["1"], ["2", "3", "4"]])


def test_edge_partitions(hept):
    parts = pt.enumerate_edge_partitions(hept.tree, 3, independent_only=True)
    assert SetPartition([["a", "d"], ["b"], ["c"]]) in parts
    assert pt.enumerate_edge_partitions(hept.tree, 1) == [SetPartition([hept.edge_ids])]
    assert pt.enumerate_edge_partitions(gc.path_tree(3), 2, independent_only=True) == [
        SetPartition([["a"], ["b"]])
    ]


@pytest.mark.parametrize("n,bell", [(0, 1), (1, 1), (3, 5), (5, 52), (6, 203)])
def test_set_partition_counts(n, bell):
    assert len(list(pt.set_partitions([str(i) for i in range(n)]))) == bell


def test_stirling_counts():
    assert len(list(pt.set_partitions("abcde", 2))) == 15
    assert len(list(pt.set_partitions("abcde", 3))) == 25


def test_partition_validation():
    with pytest.raises(ValueError):
        SetPartition([["1", "2"], ["2"]])
    with pytest.raises(ValueError):
        SetPartition([["1"], []])
    with pytest.raises(ValueError):
        SetPartition([["1"]], universe="12")


def test_partition_json(tmp_path):
    q = SetPartition([["10", "2"], ["1"]])
    assert q.to_lists() == [["1"], ["2", "10"]]
    f = tmp_path / "q.json"
    f.write_text(q.to_json())
    assert pt.load_partition(f) == q
    assert json.loads(q.to_json()) == q.to_lists()
    with pytest.raises(ValueError):
        pt.partition_from_lists(3)


def test_rank_and_refinement():
    q = SetPartition([["1", "5"], ["2", "3", "4"]])
    assert q.rank() == 3
    assert SetPartition.singletons("12345").refines(q)
    assert not q.refines(SetPartition.singletons("12345"))
