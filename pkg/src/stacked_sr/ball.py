"""Quotients of the tree ideal by the span attached to an edge partition.

An edge partition P (one color per block) determines a vertex partition
and hence a regular span L(P). Dividing it out identifies variables into
classes. Each tree vertex v then gives one facet: for every color, the
class of the edges of that color seen first from v. When every color
class is a set of pairwise disjoint edges the complex is a triangulated
ball and adding the monomials of the interior faces F_e cuts out its
boundary sphere.
"""

from dataclasses import dataclass
from itertools import combinations

from stacked_sr import limits
from stacked_sr.graph_core import (
    DirectedTree,
    Hypertree,
    Tree,
    UnionFind,
    label_key,
    sort_labels,
    tree_shapes,
)
from stacked_sr.partitions import (
    AdjacentEdgesError,
    DependentBlockError,
    SetPartition,
    edge_seed_pairs,
    edge_to_vertex_partition,
    enumerate_edge_partitions,
)
from stacked_sr.regular import space_of_vertex_partition, stepwise_quotient
from stacked_sr.simplicial import SimplicialComplex, hypertree_of
from stacked_sr.sr_ideal import SquarefreeMonomialIdeal, complex_of, sr_ideal_of
from stacked_sr.tree_ideal import EVar, all_evars, class_var


def _directed(t):
    return t if isinstance(t, DirectedTree) else DirectedTree(t)


def _edge_partition(p, t):
    if not isinstance(p, SetPartition):
        p = SetPartition(p)
    if p.universe != frozenset(t.edge_ids):
        raise ValueError("not a partition of the edges")
    return p


class VariableClassMap:
    """Classes of identified variables after dividing out L(P).

    Singleton classes are represented by the variable itself, merged ones
    by a :class:`QuotientVar` holding the members.
    """

    def __init__(self, classes):
        self.classes = tuple(sorted(classes, key=lambda c: sorted(map(label_key, c))))
        self._of = {}
        for c in self.classes:
            label = next(iter(c)) if len(c) == 1 else class_var(c)
            for x in c:
                self._of[x] = label

    def of(self, var):
        return self._of[var]

    def representative(self, var):
        return min(self.members(var), key=label_key)

    def members(self, var):
        label = self._of[var]
        return set(label) if isinstance(label, frozenset) else {label}

    def labels(self):
        return sort_labels(set(self._of.values()))

    def merged(self):
        return [c for c in self.classes if len(c) > 1]

    def __len__(self):
        return len(self.classes)


def variable_classes(t, p):
    """Union-find over the variables, seeded by a basis of L(P)."""
    t = _directed(t)
    p = _edge_partition(p, t)
    q = edge_to_vertex_partition(p, t.tree)
    uf = UnionFind(all_evars(t))
    for d in space_of_vertex_partition(q, t).differences:
        uf.union(d.plus, d.minus)
    return VariableClassMap(uf.classes())


def maximal_edge_sets(t, p):
    """For each block, the maximal sets of its edges pairwise seeing each other.

    Two edges of a block see each other when no other edge of the block is
    on the path between them.
    """
    import networkx as nx

    tree = getattr(t, "tree", t)
    p = _edge_partition(p, tree)
    out = {}
    for block in p.blocks:
        g = nx.Graph()
        g.add_nodes_from(block)
        g.add_edges_from(edge_seed_pairs(SetPartition([block]), tree))
        out[block] = sorted(
            (frozenset(c) for c in nx.find_cliques(g)),
            key=lambda c: sorted(map(label_key, c)),
        )
    return out


def nearest_edges(t, block, v):
    """Edges f of the block such that f is the only block edge on the way to v."""
    tree = getattr(t, "tree", t)
    out = set()
    for f in block:
        a, b = tree.ends(f)
        near = a if tree.distance(a, v) < tree.distance(b, v) else b
        between = tree.path(near, v).edges
        if not any(e in block for e in between):
            out.add(f)
    return frozenset(out)


def quotient_facet(t, p, v, classes=None):
    """Facet of the quotient complex at tree vertex v, as a set of class labels."""
    t = _directed(t)
    p = _edge_partition(p, t)
    classes = classes or variable_classes(t, p)
    facet = set()
    for block in p.blocks:
        near = nearest_edges(t, block, v)
        labels = {classes.of(EVar(f, t.to_bit(f, v))) for f in near}
        if len(labels) != 1:
            raise AssertionError("nearest edges of one color fall into several classes")
        facet |= labels
    return frozenset(facet)


@dataclass
class QuotientComplex:
    complex: SimplicialComplex
    facet_index: dict          # tree vertex -> facet
    classes: VariableClassMap
    tree: DirectedTree
    partition: SetPartition

    def dimension(self):
        return self.complex.dimension()


def quotient_complex(t, p):
    """The complex of the quotient by L(P), one facet per tree vertex."""
    t = _directed(t)
    p = _edge_partition(p, t)
    q = edge_to_vertex_partition(p, t.tree)
    for b in q.blocks:
        if not t.tree.is_independent_vertex_set(b):
            raise DependentBlockError(b)
    classes = variable_classes(t, p)
    index = {v: quotient_facet(t, p, v, classes) for v in t.vertices}
    ground = classes.labels()
    return QuotientComplex(
        SimplicialComplex(index.values(), ground=ground), index, classes, t, p
    )


def quotient_complex_by_joins(t, p):
    """Same complex, obtained by dividing out one difference at a time."""
    t = _directed(t)
    p = _edge_partition(p, t)
    x, bad = stepwise_quotient(edge_to_vertex_partition(p, t.tree), t)
    if x is None:
        raise AssertionError(f"{bad} does not cut squarefree")
    return x


def _block_of_edge(p, e):
    for i, b in enumerate(p.blocks):
        if e in b:
            return i
    raise KeyError(f"unknown edge {e!r}")


def shared_face(t, p, e, classes=None):
    """Codimension-one face shared by the facets at the two ends of e."""
    t = _directed(t)
    p = _edge_partition(p, t)
    if e not in t.tree.edges:
        raise KeyError(f"unknown edge {e!r}")
    classes = classes or variable_classes(t, p)
    v, w = t.tree.ends(e)
    k = _block_of_edge(p, e)
    face = set()
    for i, block in enumerate(p.blocks):
        if i == k:
            continue
        near = nearest_edges(t, block, v)
        face |= {classes.of(EVar(f, t.to_bit(f, v))) for f in near}
    return frozenset(face)


def block_components(t, p):
    """Vertex supports of the connected pieces of each block's subforest."""
    tree = getattr(t, "tree", t)
    p = _edge_partition(p, tree)
    supports = []
    for block in p.blocks:
        uf = UnionFind()
        for e in block:
            a, b = tree.ends(e)
            uf.add(a)
            uf.add(b)
            uf.union(a, b)
        supports.extend(uf.classes())
    return supports


def quotient_hypertree(t, p):
    tree = getattr(t, "tree", t)
    return Hypertree(tree.vertices, block_components(tree, p))


def hypertree_from_complex(qc):
    """Hypertree of the quotient complex, with facets named by tree vertex."""
    names = {}
    for v, f in qc.facet_index.items():
        if f in names:
            raise AssertionError("two tree vertices give the same facet")
        names[f] = v
    return hypertree_of(qc.complex, names=names)


def is_independent_edge_partition(p, t):
    tree = getattr(t, "tree", t)
    return all(tree.is_independent_edge_set(b) for b in p.blocks)


@dataclass
class Boundary:
    ideal: SquarefreeMonomialIdeal      # ideal of the ball plus the interior faces
    complex: SimplicialComplex
    interior_faces: list                # the F_e, one per tree edge
    degenerate: bool                    # single edge: F_e is empty, boundary is void


def boundary_ideal(t, p):
    """Ideal of the ball plus the monomials of its interior faces F_e."""
    t = _directed(t)
    p = _edge_partition(p, t)
    for b in p.blocks:
        if not t.tree.is_independent_edge_set(b):
            raise AdjacentEdgesError(b)
    qc = quotient_complex(t, p)
    faces = [shared_face(t, p, e, qc.classes) for e in t.edge_ids]
    ball = sr_ideal_of(qc.complex)
    ideal = SquarefreeMonomialIdeal(qc.complex.ground, list(ball.generators) + faces)
    return Boundary(ideal, complex_of(ideal), faces, any(not f for f in faces))


def boundary_by_faces(qc, faces):
    """Faces of the ball containing none of the given faces (oracle)."""
    keep = [
        f for f in qc.complex.faces() if not any(g <= f for g in faces)
    ]
    if not keep:
        return SimplicialComplex([], ground=qc.complex.ground)
    return SimplicialComplex(keep, ground=qc.complex.ground)


def free_faces(x):
    """Codimension-one faces of a pure complex lying in exactly one facet."""
    count = {}
    for f in x.facets:
        for v in f:
            g = f - {v}
            count[g] = count.get(g, 0) + 1
    return [g for g, c in count.items() if c == 1]


# --- sphere checks ---------------------------------------------------------------


def is_pseudomanifold(x):
    """Pure, and every codimension-one face lies in exactly two facets."""
    if not x.is_pure() or x.is_void():
        return False
    count = {}
    for f in x.facets:
        for v in f:
            g = f - {v}
            count[g] = count.get(g, 0) + 1
    return all(c == 2 for c in count.values())


def cycle_order(x):
    """Vertices of a 1-dimensional complex in cycle order, or None if not one cycle."""
    if x.dimension() != 1 or not x.is_pure():
        return None
    adj = {}
    for f in x.facets:
        a, b = sort_labels(f)
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(n) != 2 for n in adj.values()):
        return None
    start = sort_labels(adj)[0]
    order = [start]
    prev, cur = None, start
    while True:
        a, b = adj[cur]
        nxt = b if a == prev else a
        if nxt == start:
            break
        order.append(nxt)
        prev, cur = cur, nxt
    return order if len(order) == len(adj) else None


def is_sphere(x, dim):
    """Combinatorial sphere checks for a complex of the given dimension.

    Dimension 1: a single cycle. Higher: a pseudomanifold with the Euler
    characteristic of a sphere. Dimension 0: exactly two points.
    """
    if dim == 0:
        return x.dimension() == 0 and len(x.facets) == 2
    if dim == 1:
        return cycle_order(x) is not None
    return (
        x.dimension() == dim
        and is_pseudomanifold(x)
        and x.euler_characteristic() == 1 + (-1) ** dim
    )


def max_ball_sequence_length(t):
    tree = getattr(t, "tree", t)
    return len(tree.edge_ids) - tree.max_degree()


def max_ball_length_by_search(t):
    tree = getattr(t, "tree", t)
    n = len(tree.edge_ids)
    best = 0
    for r in range(1, n + 1):
        if enumerate_edge_partitions(tree, r, independent_only=True):
            best = n - r
            break
    return best


# --- polygon triangulations ------------------------------------------------------

DEFAULT_POLYGON_CAP = 12


@dataclass(frozen=True)
class Triangulation:
    """Triangles of a polygon with corners 1..n, plus the construction used."""

    n: int
    triangles: tuple
    tree: Tree
    edge_partition: SetPartition
    apex: int

    def to_record(self):
        return {
            "n": self.n,
            "tree": self.tree.to_dict(),
            "edge_partition": self.edge_partition.to_lists(),
            "apex": self.apex,
            "facets": [list(tr) for tr in self.triangles],
        }


def _cone(facets, apex_size):
    apex = {f"apex{i}" for i in range(apex_size)}
    return SimplicialComplex([set(f) | apex for f in facets])


def _base_complex(tree, p):
    if not tree.edge_ids:
        return SimplicialComplex([set()])
    return quotient_complex(tree, p).complex


def polygon_labelings(x):
    """All labelings of a triangulated polygon's corners by 1..n along its boundary."""
    boundary = SimplicialComplex(free_faces(x))
    order = cycle_order(boundary)
    if order is None or len(order) != len(x.support):
        raise AssertionError("complex is not a triangulated polygon")
    n = len(order)
    out = set()
    for start in range(n):
        for step in (1, -1):
            name = {order[(start + step * i) % n]: i + 1 for i in range(n)}
            out.add(frozenset(
                tuple(sorted(name[v] for v in f)) for f in x.facets
            ))
    return out


def enumerate_polygon_triangulations(n, cap=None):
    """Triangulations of the labeled n-gon, each with a tree certificate.

    Trees on n-2 vertices with maximal degree at most 3 and partitions of
    their edges into at most three independent blocks give triangulated
    balls of dimension (#blocks - 1); coning over a (3 - #blocks)-vertex apex
    brings each to dimension 2.
    """
    if n < 3:
        raise ValueError("a polygon has at least three corners")
    if cap is None:
        limits.check(n, DEFAULT_POLYGON_CAP, "polygon size")
    elif n > cap:
        raise limits.CapExceeded(f"polygon size {n} exceeds cap {cap}")
    found = {}
    for tree in tree_shapes(n - 2, cap=max(n - 2, 1)):
        if tree.max_degree() > 3:
            continue
        for k in range(0, 4):
            parts = ([SetPartition([])] if k == 0 and not tree.edge_ids
                     else enumerate_edge_partitions(tree, k, independent_only=True)
                     if k >= 1 else [])
            for p in parts:
                x = _cone(_base_complex(tree, p).facets, 3 - k)
                for tri in polygon_labelings(x):
                    key = tuple(sorted(tri))
                    if key not in found:
                        found[key] = Triangulation(n, key, tree, p, 3 - k)
    return [found[k] for k in sorted(found)]


def _crosses(d, e):
    (a, b), (c, x) = d, e
    return (a < c < b < x) or (c < a < x < b)


def brute_force_triangulations(n):
    """Maximal sets of pairwise non-crossing diagonals, turned into triangles."""
    diagonals = [(a, b) for a in range(1, n + 1) for b in range(a + 2, n + 1)
                 if not (a == 1 and b == n)]
    need = n - 3
    found = []

    def grow(start, chosen):
        if len(chosen) == need:
            found.append(list(chosen))
            return
        for i in range(start, len(diagonals)):
            if len(chosen) + len(diagonals) - i < need:
                return
            d = diagonals[i]
            if all(not _crosses(d, c) for c in chosen):
                chosen.append(d)
                grow(i + 1, chosen)
                chosen.pop()

    grow(0, [])
    sides = {(i, i + 1) for i in range(1, n)} | {(1, n)}
    out = set()
    for chosen in found:
        segs = sides | set(chosen)
        tris = frozenset(
            (a, b, c)
            for a, b, c in combinations(range(1, n + 1), 3)
            if {(a, b), (b, c), (a, c)} <= segs
        )
        out.add(tris)
    return out


def catalan(m):
    c = 1
    for i in range(m):
        c = c * 2 * (2 * i + 1) // (i + 2)
    return c
