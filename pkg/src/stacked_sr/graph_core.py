"""Trees, directed trees and hypertrees.

Vertex and edge labels are opaque strings. Wherever an order is needed,
labels are sorted with :func:`label_key`, which puts purely numeric labels
first in numeric order and everything else after in string order, so that
``"10"`` sorts after ``"9"``.
"""

from collections import deque
from functools import cached_property
from itertools import combinations, product
import json
import string

from stacked_sr import limits


def label_key(label):
    """Sort key usable across strings, ints and (edge, bit) variable pairs."""
    if isinstance(label, bool):
        return (0, int(label), str(label))
    if isinstance(label, int):
        return (0, label, str(label))
    if isinstance(label, str):
        if label.isdigit():
            return (0, int(label), label)
        return (1, 0, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label), "")
    if isinstance(label, frozenset):
        return (3, tuple(sorted(label_key(x) for x in label)), "")
    return (4, 0, repr(label))


def sort_labels(labels):
    return sorted(labels, key=label_key)


class UnionFind:
    """Disjoint sets over a fixed, hashable universe."""

    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the classes of x and y; False if already together."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # Smallest label becomes the root so that results are reproducible.
        if label_key(ry) < label_key(rx):
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return [frozenset(g) for g in groups.values()]


def default_edge_ids(count):
    """``a, b, c, ...`` for up to 26 edges, ``e1, e2, ...`` beyond."""
    if count <= 26:
        return list(string.ascii_lowercase[:count])
    return [f"e{i}" for i in range(1, count + 1)]


class Path:
    """A simple path in a tree.

    ``vertices`` runs from the start to the end vertex, ``edges`` holds the
    edge ids in the same order. ``first_edge`` is incident to the start and
    ``last_edge`` to the end; both are None for a single-vertex path.
    """

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)

    @property
    def first_edge(self):
        return self.edges[0] if self.edges else None

    @property
    def last_edge(self):
        return self.edges[-1] if self.edges else None

    def __len__(self):
        return len(self.edges)

    def reversed(self):
        return Path(self.vertices[::-1], self.edges[::-1])

    def __eq__(self, other):
        return (
            isinstance(other, Path)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Path({list(self.vertices)}, {list(self.edges)})"


class Tree:
    """An undirected labeled tree with named edges.

    ``edges`` maps edge id to its pair of endpoints. The constructor checks
    the tree invariants and raises ``ValueError`` on violation.
    """

    def __init__(self, vertices, edges):
        vertices = list(vertices)
        self._vertices = tuple(sort_labels(set(vertices)))
        if len(self._vertices) != len(vertices):
            raise ValueError("duplicate vertex labels")
        if isinstance(edges, dict):
            items = list(edges.items())
        else:
            edges = list(edges)
            ids = default_edge_ids(len(edges))
            items = list(zip(ids, sorted(
                (tuple(sort_labels(e)) for e in edges),
                key=lambda p: (label_key(p[0]), label_key(p[1])),
            )))
        vset = set(self._vertices)
        ends = {}
        for eid, pair in items:
            u, w = tuple(pair)
            if u == w:
                raise ValueError(f"edge {eid!r} is a self-loop")
            if u not in vset or w not in vset:
                raise ValueError(f"edge {eid!r} has an undeclared endpoint")
            if eid in ends:
                raise ValueError(f"duplicate edge id {eid!r}")
            ends[eid] = (u, w)
        if self._vertices and len(ends) != len(self._vertices) - 1:
            raise ValueError("a tree on n vertices has n-1 edges")
        if not self._vertices:
            raise ValueError("a tree needs at least one vertex")
        self._ends = {e: ends[e] for e in sort_labels(ends)}
        self._adj = {v: {} for v in self._vertices}
        for e, (u, w) in self._ends.items():
            if w in self._adj[u]:
                raise ValueError("parallel edges")
            self._adj[u][w] = e
            self._adj[w][u] = e
        if len(self._component(self._vertices[0])) != len(self._vertices):
            raise ValueError("tree is not connected")

    def _component(self, start):
        seen = {start}
        todo = [start]
        while todo:
            v = todo.pop()
            for w in self._adj[v]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    @property
    def vertices(self):
        return self._vertices

    @property
    def edge_ids(self):
        return tuple(self._ends)

    @property
    def edges(self):
        """Mapping edge id -> (endpoint, endpoint)."""
        return dict(self._ends)

    def ends(self, e):
        try:
            return self._ends[e]
        except KeyError:
            raise KeyError(f"unknown edge {e!r}") from None

    def neighbors(self, v):
        return sort_labels(self._adj[v])

    def degree(self, v):
        return len(self._adj[v])

    def edge_between(self, u, w):
        return self._adj[u].get(w)

    def incident_edges(self, v):
        return sort_labels(self._adj[v].values())

    def _check(self, *vs):
        for v in vs:
            if v not in self._adj:
                raise KeyError(f"unknown vertex {v!r}")

    @cached_property
    def _parents(self):
        # BFS parent maps from every root; small trees only.
        out = {}
        for root in self._vertices:
            parent = {root: None}
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self._adj[v]:
                    if w not in parent:
                        parent[w] = v
                        queue.append(w)
            out[root] = parent
        return out

    def path(self, v, w):
        """The unique path from v to w."""
        self._check(v, w)
        parent = self._parents[w]
        verts = [v]
        while verts[-1] != w:
            verts.append(parent[verts[-1]])
        edges = [self._adj[a][b] for a, b in zip(verts, verts[1:])]
        return Path(verts, edges)

    def distance(self, v, w):
        return len(self.path(v, w))

    def side(self, e, v):
        """The endpoint of edge e on the same side as vertex v."""
        a, b = self.ends(e)
        self._check(v)
        return a if self.distance(a, v) < self.distance(b, v) else b

    def edge_path(self, f, g):
        """Edge ids on the path linking edge f to edge g, both included."""
        fa, fb = self.ends(f)
        ga, gb = self.ends(g)
        if f == g:
            return (f,)
        best = min(
            (self.path(x, y) for x in (fa, fb) for y in (ga, gb)),
            key=len,
        )
        return (f,) + best.edges + (g,)

    def max_degree(self):
        return max((len(a) for a in self._adj.values()), default=0)

    def is_independent_vertex_set(self, vs):
        vs = set(vs)
        return not any(u in vs and w in vs for u, w in self._ends.values())

    def is_independent_edge_set(self, es):
        seen = set()
        for e in es:
            u, w = self.ends(e)
            if u in seen or w in seen:
                return False
            seen.update((u, w))
        return True

    def relabeled(self, vmap, emap=None):
        emap = emap or {e: e for e in self._ends}
        return Tree(
            [vmap[v] for v in self._vertices],
            {emap[e]: (vmap[u], vmap[w]) for e, (u, w) in self._ends.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Tree)
            and self._vertices == other._vertices
            and self._ends == other._ends
        )

    def __hash__(self):
        return hash((self._vertices, tuple(self._ends.items())))

    def __repr__(self):
        body = ", ".join(f"{e}={u}-{w}" for e, (u, w) in self._ends.items())
        return f"Tree(V={list(self._vertices)}, E={{{body}}})"

    def to_dict(self):
        return {
            "vertices": list(self._vertices),
            "edges": [{"id": e, "ends": list(p)} for e, p in self._ends.items()],
        }


class DirectedTree:
    """A tree together with a head endpoint for every edge.

    When ``head`` is omitted or misses an edge, that edge points to its
    endpoint with the larger label.
    """

    def __init__(self, tree, head=None):
        self.tree = tree
        head = dict(head or {})
        for e in head:
            if e not in tree.edges:
                raise KeyError(f"unknown edge {e!r}")
        resolved = {}
        for e, (u, w) in tree.edges.items():
            h = head.get(e, max(u, w, key=label_key))
            if h not in (u, w):
                raise ValueError(f"head {h!r} is not an endpoint of {e!r}")
            resolved[e] = h
        self._head = resolved

    @property
    def vertices(self):
        return self.tree.vertices

    @property
    def edge_ids(self):
        return self.tree.edge_ids

    def head(self, e):
        return self._head[e]

    def tail(self, e):
        u, w = self.tree.ends(e)
        return w if self._head[e] == u else u

    @property
    def heads(self):
        return dict(self._head)

    def to_bit(self, e, v):
        """1 if edge e points towards vertex v, else 0.

        For an edge incident to v this is 1 exactly when v is its head; in
        general it asks whether v lies on the head side of e.
        """
        return 1 if self.tree.side(e, v) == self._head[e] else 0

    def path(self, v, w):
        return self.tree.path(v, w)

    def __eq__(self, other):
        return (
            isinstance(other, DirectedTree)
            and self.tree == other.tree
            and self._head == other._head
        )

    def __hash__(self):
        return hash((self.tree, tuple(sorted(self._head.items()))))

    def __repr__(self):
        body = ", ".join(
            f"{e}:{self.tail(e)}->{h}" for e, h in self._head.items()
        )
        return f"DirectedTree({body})"

    def to_dict(self):
        data = self.tree.to_dict()
        for item in data["edges"]:
            item["head"] = self._head[item["id"]]
        return data


class Hypertree:
    """A hypergraph that is connected, linear and free of cycles.

    Hyperedges have at least two vertices, none contains another, any two
    meet in at most one vertex, and the vertex/hyperedge incidence graph is
    a tree. A linear hypergraph has a cycle in the sense of alternating
    vertex sequences exactly when its incidence graph has a cycle.
    """

    def __init__(self, vertices, hyperedges):
        self.vertices = tuple(sort_labels(set(vertices)))
        hes = {frozenset(h) for h in hyperedges}
        self.hyperedges = tuple(
            sorted(hes, key=lambda h: tuple(sorted(label_key(x) for x in h)))
        )
        self._validate()

    def _validate(self):
        vset = set(self.vertices)
        if not vset:
            raise ValueError("a hypertree needs at least one vertex")
        for h in self.hyperedges:
            if len(h) < 2:
                raise ValueError("hyperedges need at least two vertices")
            if not h <= vset:
                raise ValueError("hyperedge uses an undeclared vertex")
        for h, k in combinations(self.hyperedges, 2):
            if h <= k or k <= h:
                raise ValueError("a hyperedge contains another")
            if len(h & k) > 1:
                raise ValueError("two hyperedges share more than one vertex")
        uf = UnionFind(self.vertices)
        for h in self.hyperedges:
            first, *rest = h
            for x in rest:
                uf.union(first, x)
        if len({uf.find(v) for v in self.vertices}) != 1:
            raise ValueError("hypergraph is not connected")
        # Connected incidence graph is a tree iff it has |nodes| - 1 edges.
        if sum(len(h) - 1 for h in self.hyperedges) != len(self.vertices) - 1:
            raise ValueError("hypergraph has a cycle")

    @classmethod
    def from_tree(cls, tree):
        return cls(tree.vertices, [frozenset(p) for p in tree.edges.values()])

    def is_ordinary_tree(self):
        return all(len(h) == 2 for h in self.hyperedges)

    def __eq__(self, other):
        return (
            isinstance(other, Hypertree)
            and self.vertices == other.vertices
            and set(self.hyperedges) == set(other.hyperedges)
        )

    def __hash__(self):
        return hash((self.vertices, frozenset(self.hyperedges)))

    def __repr__(self):
        hs = ["{" + ",".join(map(str, sort_labels(h))) + "}" for h in self.hyperedges]
        return f"Hypertree({[str(v) for v in self.vertices]}, [{', '.join(hs)}])"


def is_aligned(t, v, u, w):
    """True when u lies on the path from v to w."""
    if len({v, u, w}) != 3:
        raise ValueError("alignment needs three distinct vertices")
    return u in t.path(v, w).vertices


def is_nonaligned(t, triple):
    v, u, w = tuple(triple)
    if len({v, u, w}) != 3:
        raise ValueError("alignment needs three distinct vertices")
    return not (
        is_aligned(t, v, u, w) or is_aligned(t, u, v, w) or is_aligned(t, v, w, u)
    )


def max_degree(t):
    return t.max_degree()


def refines(tp, t):
    """Whether hypertree tp is a refinement of hypertree t."""
    if set(tp.vertices) != set(t.vertices):
        raise ValueError("hypertrees live on different vertex sets")
    for h in tp.hyperedges:
        if not any(h <= k for k in t.hyperedges):
            return False
    for k in t.hyperedges:
        parts = [h for h in tp.hyperedges if h <= k]
        if frozenset().union(*parts) != k:
            return False
    return True


DEFAULT_TREE_CAP = 9


def prufer_to_edges(seq, labels):
    """Decode a Prüfer sequence over ``labels`` into a list of edges."""
    n = len(labels)
    degree = [1] * n
    for i in seq:
        degree[i] += 1
    edges = []
    for i in seq:
        for j in range(n):
            if degree[j] == 1:
                edges.append((labels[j], labels[i]))
                degree[j] -= 1
                degree[i] -= 1
                break
    u, w = [labels[j] for j in range(n) if degree[j] == 1]
    edges.append((u, w))
    return edges


def enumerate_trees(n, cap=None):
    """All labeled trees on vertices ``"1" .. str(n)``, in Prüfer order."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if cap is None:
        limits.check(n, DEFAULT_TREE_CAP, "tree size")
    elif n > cap:
        raise limits.CapExceeded(f"tree size {n} exceeds cap {cap}")
    labels = [str(i) for i in range(1, n + 1)]
    if n == 1:
        return [Tree(labels, [])]
    if n == 2:
        return [Tree(labels, [("1", "2")])]
    return [
        Tree(labels, prufer_to_edges(seq, labels))
        for seq in product(range(n), repeat=n - 2)
    ]


def random_tree(n, rng):
    """Uniform labeled tree on ``"1" .. str(n)`` drawn with ``rng``."""
    labels = [str(i) for i in range(1, n + 1)]
    if n <= 2:
        return Tree(labels, [("1", "2")] if n == 2 else [])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return Tree(labels, prufer_to_edges(seq, labels))


def canonical_form(t):
    """Isomorphism-invariant string of an unlabeled tree (AHU encoding)."""
    n = len(t.vertices)
    if n == 1:
        return "()"
    # Centers by repeated leaf stripping.
    deg = {v: t.degree(v) for v in t.vertices}
    layer = [v for v in t.vertices if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.neighbors(v):
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt

    def encode(v, parent):
        kids = sorted(encode(w, v) for w in t.neighbors(v) if w != parent)
        return "(" + "".join(kids) + ")"

    return min(encode(c, None) for c in layer)


DEFAULT_SHAPE_CAP = 16


def tree_shapes(n, cap=None):
    """One labeled tree per isomorphism class on n vertices.

    Classes come from networkx's generator of non-isomorphic trees, so
    this scales well past the labeled enumeration cap.
    """
    if n < 1:
        raise ValueError("need at least one vertex")
    if cap is None:
        limits.check(n, DEFAULT_SHAPE_CAP, "tree size")
    elif n > cap:
        raise limits.CapExceeded(f"tree size {n} exceeds cap {cap}")
    if n <= 2:
        return enumerate_trees(n, cap=n)
    import networkx as nx

    labels = [str(i) for i in range(1, n + 1)]
    shapes = {}
    for g in nx.nonisomorphic_trees(n):
        t = Tree(labels, [(labels[u], labels[w]) for u, w in g.edges()])
        shapes.setdefault(canonical_form(t), t)
    return [shapes[k] for k in sorted(shapes)]


def path_tree(n):
    labels = [str(i) for i in range(1, n + 1)]
    return Tree(labels, list(zip(labels, labels[1:])))


def star_tree(n):
    labels = [str(i) for i in range(1, n + 1)]
    return Tree(labels, [("1", x) for x in labels[1:]])


# --- JSON and DOT -------------------------------------------------------


def tree_from_dict(data):
    """Build a DirectedTree from the JSON tree format.

    ``{"vertices": [...], "edges": [{"id": "a", "ends": [u, w], "head": u}]}``
    with ``head`` optional per edge.
    """
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = {}
        heads = {}
        for item in data["edges"]:
            eid = str(item["id"])
            u, w = (str(x) for x in item["ends"])
            edges[eid] = (u, w)
            if item.get("head") is not None:
                heads[eid] = str(item["head"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed tree document: {exc}") from exc
    return DirectedTree(Tree(vertices, edges), heads)


def load_tree(path):
    with open(path) as fh:
        return tree_from_dict(json.load(fh))


def _dot_id(x):
    return json.dumps(str(x))


def tree_to_dot(t, name="T"):
    """DOT text; directed trees render their orientation."""
    directed = isinstance(t, DirectedTree)
    tree = t.tree if directed else t
    kind, arrow = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    for v in tree.vertices:
        lines.append(f"  {_dot_id(v)};")
    for e, (u, w) in tree.edges.items():
        if directed:
            u, w = t.tail(e), t.head(e)
        lines.append(f"  {_dot_id(u)} {arrow} {_dot_id(w)} [label={_dot_id(e)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hypertree_to_dot(h, name="H"):
    """Hyperedges become small auxiliary nodes joined to their members."""
    lines = [f"graph {name} {{"]
    for v in h.vertices:
        lines.append(f"  {_dot_id(v)};")
    for i, edge in enumerate(h.hyperedges):
        aux = _dot_id(f"_h{i}")
        lines.append(f"  {aux} [shape=point];")
        for v in sort_labels(edge):
            lines.append(f"  {aux} -- {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
