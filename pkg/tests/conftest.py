import sys

import pytest

from stacked_sr.graph_core import DirectedTree, Tree, path_tree
from stacked_sr.partitions import SetPartition
from stacked_sr.simplicial import SimplicialComplex


def heptagon_tree():
    t = Tree("12345", {"a": ("1", "2"), "b": ("2", "3"), "c": ("2", "4"), "d": ("4", "5")})
    return DirectedTree(t, {"a": "1", "b": "3", "c": "2", "d": "4"})


def heptagon_triangulation():
    return SimplicialComplex([
        {"1", "2", "7"}, {"2", "5", "7"}, {"5", "6", "7"}, {"2", "4", "5"}, {"2", "3", "4"},
    ])


def flow_tree():
    # Seven vertices, branching at 3 and 5.
    return Tree("1234567", [("1", "2"), ("2", "3"), ("3", "5"), ("5", "7"), ("3", "4"), ("5", "6")])


def branching_tree():
    # Ten vertices: the path 1..7 with a second branch 4-8-9-10.
    return Tree(
        [str(i) for i in range(1, 11)],
        [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "7"),
         ("4", "8"), ("8", "9"), ("9", "10")],
    )


def colored_tree():
    # Eight edges in three colors around the vertex "v".
    t = Tree(
        ["A", "B", "C", "D", "v", "L1", "L2", "L3", "L4"],
        {"a": ("A", "B"), "c": ("B", "C"), "e": ("C", "D"), "b": ("B", "L1"),
         "d": ("C", "L2"), "f": ("C", "v"), "h": ("v", "L3"), "g": ("v", "L4")},
    )
    p = SetPartition([["a", "c", "e", "g"], ["b", "h"], ["d", "f"]])
    return DirectedTree(t), p


def directed_path(n):
    return DirectedTree(path_tree(n))


@pytest.fixture
def hept():
    return heptagon_tree()


@pytest.fixture
def hept_tri():
    return heptagon_triangulation()


@pytest.fixture
def hept_partition():
    return SetPartition([["a", "d"], ["b"], ["c"]])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
