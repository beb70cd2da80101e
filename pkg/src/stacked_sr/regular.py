"""Which spans of variable differences are regular on the tree ideal.

Regular spans are classified by partitions of the tree's vertices: a block
U contributes the differences along any tree on U that "flows with" the
tree, meaning no edge of it jumps over another vertex of U. The span only
depends on U. A partition gives a squarefree quotient exactly when its
blocks are independent sets.
"""

from dataclasses import dataclass
from itertools import product

from stacked_sr.graph_core import UnionFind, label_key, sort_labels
from stacked_sr.linalg import RowEchelon, span_contains
from stacked_sr.partitions import SetPartition, set_partitions
from stacked_sr.sr_ideal import (
    cuts_squarefree,
    is_nonzerodivisor,
    is_regular_forest,
    project_ideal,
    quotient_by_difference,
)
from stacked_sr.tree_ideal import all_evars, class_var, h_difference, psi_bar, tree_complex, tree_ideal


class FlowTree:
    """A tree on a vertex subset U of the ambient tree."""

    def __init__(self, support, edges):
        self.support = frozenset(support)
        self.edges = tuple(sorted(
            (tuple(sort_labels(e)) for e in edges),
            key=lambda e: (label_key(e[0]), label_key(e[1])),
        ))
        if not self.support:
            raise ValueError("a flow tree needs at least one vertex")
        if len(self.edges) != len(self.support) - 1:
            raise ValueError("a tree on U has |U|-1 edges")
        uf = UnionFind(self.support)
        for u, w in self.edges:
            if u not in self.support or w not in self.support:
                raise ValueError("edge leaves the support")
            if not uf.union(u, w):
                raise ValueError("edges contain a cycle")

    def __eq__(self, other):
        return isinstance(other, FlowTree) and (self.support, self.edges) == (other.support, other.edges)

    def __hash__(self):
        return hash((self.support, self.edges))

    def __repr__(self):
        es = ", ".join(f"{u}-{w}" for u, w in self.edges)
        return f"FlowTree({{{','.join(map(str, sort_labels(self.support)))}}}: {es})"


def _check_support(u, t):
    missing = set(u) - set(t.vertices)
    if missing:
        raise KeyError(f"vertices {sorted(map(str, missing))} are not in the tree")


def flows_with(s, t):
    """No edge {v, w} of s has another vertex of s on the tree path v..w."""
    _check_support(s.support, t)
    for v, w in s.edges:
        inner = t.path(v, w).vertices[1:-1]
        if any(u in s.support for u in inner):
            return False
    return True


def canonical_flowing_tree(u, t, center):
    """A tree on u that flows with t, grown outwards from ``center``.

    Every vertex of u is joined to the nearest vertex of u on its way to
    the center; the vertices with nothing of u on that way are chained in
    label order.
    """
    u = frozenset(u)
    if not u:
        raise ValueError("vertex set must be nonempty")
    _check_support(u, t)
    if center not in t.vertices:
        raise KeyError(f"center {center!r} is not a vertex")
    edges = []
    roots = []
    for w in sort_labels(u):
        towards = t.path(w, center).vertices[1:]
        hit = next((x for x in towards if x in u), None)
        if hit is None:
            roots.append(w)
        else:
            edges.append((hit, w))
    edges.extend(zip(roots, roots[1:]))
    s = FlowTree(u, edges)
    assert flows_with(s, t)
    return s


def _graph_components(vertices, edges):
    uf = UnionFind(vertices)
    forest = True
    for v, w in edges:
        if not uf.union(v, w):
            forest = False
    return uf, forest


def is_forest(vertices, edges):
    return _graph_components(vertices, edges)[1]


def is_regular_basis(g, t):
    """Whether the differences along the edges of g form a regular sequence.

    ``g`` is an edge list on the vertices of ``t`` (a directed tree); it
    must be a forest each of whose trees flows with ``t``.
    """
    edges = [tuple(e) for e in g]
    if any(v == w for v, w in edges):
        return False
    uf, forest = _graph_components(t.vertices, edges)
    if not forest:
        return False
    by_root = {}
    for v, w in edges:
        by_root.setdefault(uf.find(v), []).append((v, w))
    for part in by_root.values():
        support = {x for e in part for x in e}
        if not flows_with(FlowTree(support, part), t.tree):
            return False
    return True


def image_edges(g, t):
    """The variable pairs of the differences along g."""
    return [tuple(sorted(psi_bar(t, v, w), key=label_key)) for v, w in g]


def is_regular_by_facets(g, t, complex_=None):
    """Facet-criterion oracle on the image of g among the variables."""
    x = complex_ if complex_ is not None else tree_complex(t)
    image = image_edges(g, t)
    if len(set(frozenset(e) for e in image)) != len(image):
        return False
    if not is_forest(x.ground, image):
        return False
    return is_regular_forest(x, image)


@dataclass(frozen=True)
class RegularSpaceBasis:
    forest: tuple        # FlowTrees, one per block of size >= 2
    differences: tuple   # VariableDifference per forest edge

    def edges(self):
        return [e for s in self.forest for e in s.edges]

    def vectors(self):
        return [{d.plus: 1, d.minus: -1} for d in self.differences]


def _as_partition(q, t):
    if not isinstance(q, SetPartition):
        q = SetPartition(q)
    if q.universe != frozenset(t.vertices):
        raise ValueError("not a partition of the vertices")
    return q


def space_of_vertex_partition(q, t):
    """Canonical basis of the regular span of the vertex partition q."""
    q = _as_partition(q, t)
    forest = []
    diffs = []
    for block in q.blocks:
        if len(block) < 2:
            continue
        center = sort_labels(block)[0]
        s = canonical_flowing_tree(block, t.tree, center)
        forest.append(s)
        diffs.extend(h_difference(t, v, w) for v, w in s.edges)
    return RegularSpaceBasis(tuple(forest), tuple(diffs))


def partition_of_basis(g, t):
    """The vertex partition whose blocks are the trees of the forest g."""
    edges = [tuple(e) for e in g]
    if not is_regular_basis(edges, t):
        raise ValueError("edge set is not a regular basis")
    uf, _ = _graph_components(t.vertices, edges)
    return SetPartition(uf.classes())


def quotient_is_squarefree(q, t):
    """Whether every block of q is an independent set of the tree."""
    tree = getattr(t, "tree", t)
    q = _as_partition(q, tree)
    return all(tree.is_independent_vertex_set(b) for b in q.blocks)


def stepwise_quotient(q, t):
    """Divide out the canonical basis of q one difference at a time.

    Returns ``(complex, None)`` when every step cuts squarefree, otherwise
    ``(None, difference)`` naming the first step that creates a square.
    """
    basis = space_of_vertex_partition(q, t)
    x = tree_complex(t)
    current = {}

    def now(var):
        while var in current:
            var = current[var]
        return var

    for d in basis.differences:
        a, b = now(d.plus), now(d.minus)
        if not is_nonzerodivisor(x, a, b):
            raise AssertionError(f"{d} is a zero divisor on the partial quotient")
        if not cuts_squarefree(x, a, b):
            return None, d
        merged = class_var((a, b))
        x = quotient_by_difference(x, a, b, merged=merged)
        current[a] = merged
        current[b] = merged
    return x, None


def projected_generators(q, t):
    """Generators of the tree ideal after identifying variables in one go."""
    basis = space_of_vertex_partition(q, t)
    uf = UnionFind(all_evars(t))
    for d in basis.differences:
        uf.union(d.plus, d.minus)
    return project_ideal(tree_ideal(t), {x: uf.find(x) for x in uf.parent})


# --- the order on partitions -------------------------------------------------


def is_convex(up, u, t):
    """Every vertex of u on a path between two vertices of up is in up."""
    up, u = frozenset(up), frozenset(u)
    if not up <= u:
        raise ValueError("first set must be contained in the second")
    ordered = sort_labels(up)
    for i, v in enumerate(ordered):
        for w in ordered[i + 1:]:
            for x in t.path(v, w).vertices[1:-1]:
                if x in u and x not in up:
                    return False
    return True


def partition_leq(qp, q, t):
    """Each block of q is a union of blocks of qp, each convex in it."""
    tree = getattr(t, "tree", t)
    for block in q.blocks:
        parts = [b for b in qp.blocks if b & block]
        if any(not b <= block for b in parts):
            return False
        if any(not is_convex(b, block, tree) for b in parts):
            return False
    return True


def span_leq(qp, q, t):
    """Span containment of the canonical bases, by exact elimination."""
    return span_contains(
        space_of_vertex_partition(q, t).vectors(),
        space_of_vertex_partition(qp, t).vectors(),
    )


def is_intertwined(ui, uj, t):
    ui, uj = frozenset(ui), frozenset(uj)
    if ui & uj:
        raise ValueError("blocks overlap")
    both = ui | uj
    return not (is_convex(ui, both, t) and is_convex(uj, both, t))


def is_maximal_partition(q, t):
    tree = getattr(t, "tree", t)
    bs = q.blocks
    return all(
        is_intertwined(bs[i], bs[j], tree)
        for i in range(len(bs)) for j in range(i + 1, len(bs))
    )


def interval_below(q, t):
    """All partitions qp with qp below q, i.e. the interval [singletons, q]."""
    tree = getattr(t, "tree", t)
    per_block = []
    for block in q.blocks:
        options = [
            p.blocks for p in set_partitions(block)
            if all(is_convex(b, block, tree) for b in p.blocks)
        ]
        per_block.append(options)
    return [
        SetPartition([b for choice in combo for b in choice])
        for combo in product(*per_block)
    ]


def edge_partition_leq(pp, p, t):
    """The order on edge partitions, read through the vertex bijection."""
    from stacked_sr.partitions import edge_to_vertex_partition

    tree = getattr(t, "tree", t)
    return partition_leq(
        edge_to_vertex_partition(pp, tree), edge_to_vertex_partition(p, tree), tree
    )


def regular_length(q):
    """Length of the regular sequence attached to a vertex partition."""
    return q.rank()


def span_rank(vectors):
    return RowEchelon(vectors).rank
