"""The quadratic ideal of a directed tree and its variable differences.

Variables are pairs ``(edge, bit)``. Each pair of distinct tree vertices
picks out the two edges at the ends of the path between them; reading the
orientation of those edges towards the respective endpoint gives one
quadratic generator, and flipping both bits gives one variable difference.
"""

from itertools import combinations
from typing import NamedTuple

from stacked_sr.graph_core import DirectedTree, label_key, sort_labels
from stacked_sr.sr_ideal import SquarefreeMonomialIdeal, complex_of
from stacked_sr.simplicial import SimplicialComplex, label_text


class EVar(NamedTuple):
    edge: str
    bit: int

    @property
    def name(self):
        return f"x_{label_text(self.edge)}_{self.bit}"

    def bar(self):
        return EVar(self.edge, 1 - self.bit)

    def __str__(self):
        return self.name


class VariableDifference(NamedTuple):
    plus: EVar
    minus: EVar

    def pair(self):
        return frozenset((self.plus, self.minus))

    def negated(self):
        return VariableDifference(self.minus, self.plus)

    def __str__(self):
        return f"{self.plus.name} - {self.minus.name}"


def all_evars(t):
    return [EVar(e, b) for e in t.edge_ids for b in (0, 1)]


def _end_edges(t, v, w):
    if v == w:
        raise ValueError("the two vertices must differ")
    p = t.path(v, w)
    return p.first_edge, p.last_edge


def _near(t, v, w):
    # Variable at v's end of the path, then the one at w's end.
    e, f = _end_edges(t, v, w)
    return EVar(e, t.to_bit(e, v)), EVar(f, t.to_bit(f, w))


def psi(t, v, w):
    """The generator of the pair {v, w}, as a set of two variables."""
    return frozenset(_near(t, v, w))


def psi_bar(t, v, w):
    """Like :func:`psi` with both bits flipped."""
    return frozenset(x.bar() for x in _near(t, v, w))


def h_difference(t, v, w):
    """The difference of the two variables of psi_bar, v's end positive."""
    a, b = _near(t, v, w)
    return VariableDifference(a.bar(), b.bar())


def tree_ideal(t):
    if len(t.vertices) < 2:
        raise ValueError("tree ideal needs at least two vertices")
    gens = [psi(t, v, w) for v, w in combinations(t.vertices, 2)]
    return SquarefreeMonomialIdeal(all_evars(t), gens)


def facet_of_vertex(t, v):
    return frozenset(EVar(e, t.to_bit(e, v)) for e in t.edge_ids)


def tree_ideal_facets(t):
    """Facet F_v for each vertex v, in vertex order."""
    if len(t.vertices) < 2:
        raise ValueError("tree ideal needs at least two vertices")
    return {v: facet_of_vertex(t, v) for v in t.vertices}


def tree_complex(t):
    """The complex of the tree ideal, built from the facet formula."""
    return SimplicialComplex(tree_ideal_facets(t).values(), ground=all_evars(t))


def check_facet_formula(t):
    return complex_of(tree_ideal(t)) == tree_complex(t)


def reorient(t, flipped):
    """Flip the edges in ``flipped``; returns the new tree and the relabeling."""
    flipped = set(flipped)
    for e in flipped:
        if e not in t.tree.edges:
            raise KeyError(f"unknown edge {e!r}")
    heads = {e: (t.tail(e) if e in flipped else t.head(e)) for e in t.edge_ids}
    phi = {x: (x.bar() if x.edge in flipped else x) for x in all_evars(t)}
    return DirectedTree(t.tree, heads), phi


def difference_of_pair(t, v, w):
    """Coordinate vector of h_{v,w} as a dict EVar -> ±1."""
    d = h_difference(t, v, w)
    return {d.plus: 1, d.minus: -1}


def difference_text(d):
    return str(d)


def sorted_evars(vs):
    return sorted(vs, key=label_key)


def monomial_names(mono):
    return "*".join(x.name for x in sort_labels(mono))


class QuotientVar(frozenset):
    """A class of identified variables, named by its sorted members."""

    @property
    def name(self):
        return "+".join(x.name for x in sorted(self, key=label_key))

    def __repr__(self):
        return self.name

    __str__ = __repr__


def class_var(members):
    return QuotientVar(
        y for x in members for y in (x if isinstance(x, frozenset) else (x,))
    )
