"""Simplicial complexes given by their facets, and stacked complexes.

Faces are frozensets of hashable vertex labels. Internally each complex
numbers its ground set in :func:`label_key` order and stores facets as
integer bitmasks, which is what the kernels operate on.
"""

from dataclasses import dataclass
from functools import cached_property
import json

from stacked_sr import kernels
from stacked_sr.graph_core import Hypertree, label_key, sort_labels


def face_key(face):
    """Deterministic order on faces: by size, then by sorted labels."""
    return (len(face), tuple(label_key(x) for x in sort_labels(face)))


def sorted_faces(faces):
    return sorted((frozenset(f) for f in faces), key=face_key)


def label_text(label):
    """Printable name for a vertex label."""
    name = getattr(label, "name", None)
    if isinstance(name, str):
        return name
    return str(label)


class SimplicialComplex:
    """A complex on ``ground`` generated by ``facets``.

    Non-maximal generators are discarded. No generators at all gives the
    void complex (no faces, not even the empty one); a single empty
    generator gives the complex whose only face is the empty set.
    """

    def __init__(self, facets, ground=None):
        facets = [frozenset(f) for f in facets]
        support = frozenset().union(*facets) if facets else frozenset()
        ground = support if ground is None else frozenset(ground)
        if not support <= ground:
            raise ValueError("facet vertices must belong to the ground set")
        self._ground = tuple(sort_labels(ground))
        self._bit = {v: 1 << i for i, v in enumerate(self._ground)}
        masks = kernels.maximal_sets(self.mask(f) for f in facets)
        self._masks = tuple(masks)
        self._facets = tuple(sorted_faces(self.unmask(m) for m in masks))

    # bitmask plumbing
    def mask(self, face):
        m = 0
        for v in face:
            try:
                m |= self._bit[v]
            except KeyError:
                raise KeyError(f"{v!r} is not in the ground set") from None
        return m

    def unmask(self, m):
        out = []
        i = 0
        while m:
            if m & 1:
                out.append(self._ground[i])
            m >>= 1
            i += 1
        return frozenset(out)

    @property
    def facet_masks(self):
        return self._masks

    @property
    def ground(self):
        return self._ground

    @property
    def facets(self):
        return self._facets

    @cached_property
    def support(self):
        return frozenset().union(*self._facets) if self._facets else frozenset()

    def is_void(self):
        return not self._facets

    def dimension(self):
        """-1 for the complex {∅}; the void complex also reports -1."""
        return max((len(f) for f in self._facets), default=0) - 1

    def is_pure(self):
        return len({len(f) for f in self._facets}) <= 1

    def is_face(self, face):
        face = frozenset(face)
        if not face <= set(self._ground):
            return False
        return kernels.is_face(self._masks, self.mask(face))

    def __contains__(self, face):
        return self.is_face(face)

    def faces(self):
        return sorted_faces(self.unmask(m) for m in kernels.all_faces(self._masks))

    def face_counts(self):
        """f-vector with the empty face at index 0."""
        return kernels.face_counts(self._masks)

    def euler_characteristic(self):
        counts = self.face_counts()
        return sum((-1) ** (k - 1) * c for k, c in enumerate(counts) if k >= 1)

    def link(self, r):
        r = frozenset(r)
        rm = self.mask(r)
        rest = self.ground_set - r
        return SimplicialComplex(
            [self.unmask(m & ~rm) for m in self._masks if m & rm == rm],
            ground=rest,
        )

    def restriction(self, r):
        r = frozenset(r)
        rm = self.mask(r & self.ground_set)
        if not self._masks:
            return SimplicialComplex([], ground=r)
        return SimplicialComplex([self.unmask(m & rm) for m in self._masks], ground=r)

    def deletion(self, r):
        return self.restriction(self.ground_set - frozenset(r))

    @cached_property
    def ground_set(self):
        return frozenset(self._ground)

    def neighborhood(self, v):
        """Vertices sharing an edge with v, together with v itself."""
        out = set()
        for f in self._facets:
            if v in f:
                out |= f
        return frozenset(out)

    def components(self):
        """Vertex sets of the connected components of the support."""
        parent = {v: v for v in self.support}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for f in self._facets:
            first, *rest = sort_labels(f) or [None]
            for x in rest:
                parent[find(x)] = find(first)
        groups = {}
        for v in self.support:
            groups.setdefault(find(v), set()).add(v)
        return sorted_faces(groups.values())

    def cone_apex(self):
        """Vertices lying in every facet (empty when not a cone)."""
        if not self._facets:
            return frozenset()
        return frozenset.intersection(*self._facets)

    def relabeled(self, mapping):
        return SimplicialComplex(
            [{mapping[v] for v in f} for f in self._facets],
            ground=[mapping[v] for v in self._ground],
        )

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialComplex)
            and self.ground_set == other.ground_set
            and set(self._facets) == set(other._facets)
        )

    def __hash__(self):
        return hash((self.ground_set, frozenset(self._facets)))

    def __repr__(self):
        fs = ["{" + ",".join(label_text(v) for v in sort_labels(f)) + "}"
              for f in self._facets]
        return f"SimplicialComplex([{', '.join(fs)}])"

    def to_dict(self):
        return {
            "ground": [label_text(v) for v in self._ground],
            "facets": [[label_text(v) for v in sort_labels(f)] for f in self._facets],
        }

    def to_facet_text(self):
        return "".join(
            " ".join(label_text(v) for v in sort_labels(f)) + "\n"
            for f in self._facets
        )


def complex_from_dict(data):
    try:
        facets = [[str(v) for v in f] for f in data["facets"]]
        ground = data.get("ground")
        ground = None if ground is None else [str(v) for v in ground]
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"malformed complex document: {exc}") from exc
    return SimplicialComplex(facets, ground=ground)


def load_complex(path):
    with open(path) as fh:
        return complex_from_dict(json.load(fh))


def link(x, r):
    return x.link(r)


def restriction(x, r):
    return x.restriction(r)


def deletion(x, r):
    return x.deletion(r)


def is_cone(x):
    return x.cone_apex()


def euler_characteristic(x):
    return x.euler_characteristic()


def simplex_boundary(vertices):
    vs = list(vertices)
    return SimplicialComplex([set(vs) - {v} for v in vs], ground=vs)


# --- stacking -------------------------------------------------------------


@dataclass(frozen=True)
class StackingCertificate:
    """A facet order F_0, ..., F_k with F_p = G_p ∪ {v_p} for p ≥ 1."""

    order: tuple
    attachments: tuple  # (G_p, v_p) for p = 1..k

    def verify(self):
        if not self.order:
            return False
        size = len(self.order[0])
        seen = set(self.order[0])
        placed = [self.order[0]]
        for facet, (g, v) in zip(self.order[1:], self.attachments):
            if len(facet) != size or facet != g | {v} or v in seen:
                return False
            if not any(g <= f for f in placed):
                return False
            seen |= facet
            placed.append(facet)
        return len(self.attachments) == len(self.order) - 1


class NotStacked:
    """Falsy result of :func:`is_stacked`, carrying the reason."""

    def __init__(self, reason):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotStacked({self.reason!r})"


def is_stacked(x):
    """A stacking certificate for x, or a falsy :class:`NotStacked`."""
    if x.is_void():
        return NotStacked("void complex")
    if not x.is_pure():
        return NotStacked("not pure")
    masks = x.facet_masks
    failed = set()

    def peel(remaining):
        # Returns the reversed list of (facet, new vertex bit), or None.
        if len(remaining) == 1:
            return []
        if remaining in failed:
            return None
        rest_list = list(remaining)
        for f in sorted(remaining, reverse=True):
            others = [g for g in rest_list if g != f]
            covered = 0
            for g in others:
                covered |= g
            new = f & ~covered
            if kernels.popcount(new) != 1:
                continue
            if not kernels.is_face(others, f & ~new):
                continue
            tail = peel(remaining - {f})
            if tail is not None:
                return tail + [(f, new)]
        failed.add(remaining)
        return None

    steps = peel(frozenset(masks))
    if steps is None:
        return NotStacked("no stacking order")
    first = (set(masks) - {f for f, _ in steps}).pop()
    order = (x.unmask(first),) + tuple(x.unmask(f) for f, _ in steps)
    attachments = tuple(
        (x.unmask(f & ~b), next(iter(x.unmask(b)))) for f, b in steps
    )
    return StackingCertificate(order, attachments)


def hypertree_of(x, names=None):
    """Hypertree on the facets of a stacked complex.

    Vertices are the facets (or ``names[facet]`` when given); each
    codimension-one face G contained in at least two facets contributes
    the hyperedge of facets containing it. A cone apex is stripped first.
    """
    if not is_stacked(x):
        raise ValueError("complex is not stacked")
    apex = x.cone_apex()
    facets = list(x.facets)
    base = [f - apex for f in facets]
    label = {}
    for f, b in zip(facets, base):
        label[b] = names[f] if names is not None else f
    containing = {}
    for b in base:
        for v in b:
            containing.setdefault(b - {v}, set()).add(label[b])
    edges = [frozenset(s) for s in containing.values() if len(s) >= 2]
    return Hypertree([label[b] for b in base], edges)


# --- isomorphism ----------------------------------------------------------


def _incidence_graph(x):
    import networkx as nx

    g = nx.Graph()
    for v in x.ground:
        g.add_node(("v", v), kind="v")
    for i, f in enumerate(x.facets):
        g.add_node(("f", i), kind="f")
        for v in f:
            g.add_edge(("f", i), ("v", v))
    return g


def find_isomorphism(x, y):
    """A vertex bijection carrying x onto y, or None."""
    from networkx.algorithms.isomorphism import GraphMatcher

    if len(x.ground) != len(y.ground) or len(x.facets) != len(y.facets):
        return None
    if x.face_counts() != y.face_counts():
        return None
    gm = GraphMatcher(
        _incidence_graph(x),
        _incidence_graph(y),
        node_match=lambda a, b: a["kind"] == b["kind"],
    )
    for m in gm.isomorphisms_iter():
        return {a[1]: b[1] for a, b in m.items() if a[0] == "v"}
    return None


def is_isomorphic(x, y):
    return find_isomorphism(x, y) is not None
