"""Stanley–Reisner ideals, separation of a variable and joins of two variables.

A squarefree monomial is a frozenset of variable labels. The ideal of a
complex has the minimal non-faces as generators; the complex of an ideal
has as facets the complements of minimal transversals of the generators.
"""

from dataclasses import dataclass, field
from itertools import product
import json
import re

from stacked_sr import kernels
from stacked_sr.graph_core import DirectedTree, Tree, UnionFind, label_key, sort_labels
from stacked_sr.simplicial import (
    SimplicialComplex,
    face_key,
    hypertree_of,
    is_stacked,
    label_text,
    sorted_faces,
)


def var_name(label):
    """``x_<label>`` unless the label already carries a variable name."""
    name = getattr(label, "name", None)
    if isinstance(name, str) and name.startswith("x_"):
        return name
    return f"x_{label_text(label)}"


class SquarefreeMonomialIdeal:
    """Minimal squarefree generators over a fixed set of variables.

    The unit ideal, the ideal of the void complex, is the one ideal with an
    empty generator; it is kept as the single generator ``frozenset()``.
    """

    def __init__(self, variables, generators):
        self.variables = tuple(sort_labels(set(variables)))
        vset = set(self.variables)
        gens = [frozenset(g) for g in generators]
        for g in gens:
            if not g <= vset:
                raise ValueError("generator uses an unknown variable")
        if any(not g for g in gens):
            gens = [frozenset()]
        else:
            gens = _minimal(gens)
        self.generators = tuple(sorted_faces(gens))

    def is_unit(self):
        return self.generators == (frozenset(),)

    def contains_monomial(self, support):
        support = frozenset(support)
        return any(g <= support for g in self.generators)

    def degrees(self):
        return sorted(len(g) for g in self.generators)

    def relabeled(self, mapping):
        return SquarefreeMonomialIdeal(
            [mapping[v] for v in self.variables],
            [{mapping[v] for v in g} for g in self.generators],
        )

    def __eq__(self, other):
        return (
            isinstance(other, SquarefreeMonomialIdeal)
            and set(self.variables) == set(other.variables)
            and set(self.generators) == set(other.generators)
        )

    def __hash__(self):
        return hash((frozenset(self.variables), frozenset(self.generators)))

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"SquarefreeMonomialIdeal({', '.join(monomial_text(g) for g in self.generators)})"


def _minimal(sets):
    sets = sorted(set(sets), key=len)
    kept = []
    for s in sets:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def monomial_text(mono):
    """``x_1*x_2`` for a squarefree support, ``x_1^2*x_2`` for exponent maps."""
    if isinstance(mono, dict):
        items = sorted(mono.items(), key=lambda kv: label_key(kv[0]))
        parts = [var_name(v) + (f"^{e}" if e > 1 else "") for v, e in items]
    else:
        parts = [var_name(v) for v in sort_labels(mono)]
    return "*".join(parts) if parts else "1"


def ideal_to_text(ideal):
    return "".join(monomial_text(g) + "\n" for g in ideal.generators)


def parse_ideal_text(text, variables=None):
    """Inverse of :func:`ideal_to_text` for plain ``x_<label>`` names."""
    gens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        mono = set()
        for tok in line.split("*"):
            tok = tok.strip()
            if not re.fullmatch(r"x_\S+", tok):
                raise ValueError(f"line {lineno}: bad variable {tok!r}")
            mono.add(tok[2:])
        gens.append(mono)
    if variables is None:
        variables = set().union(*gens) if gens else set()
    return SquarefreeMonomialIdeal(variables, gens)


def ideal_to_algebra(ideal, ring="R", name="I"):
    """Ring declaration plus ideal in a generic ``ring``/``ideal`` syntax."""
    names = ", ".join(_algebra_name(v) for v in ideal.variables)
    gens = ", ".join(
        "*".join(_algebra_name(v) for v in sort_labels(g)) or "1"
        for g in ideal.generators
    )
    return f"ring {ring} = QQ[{names}];\nideal {name} = {gens};\n"


def _algebra_name(label):
    # Computer algebra systems dislike '+' and '.' in identifiers.
    return re.sub(r"[^A-Za-z0-9_]", "_", var_name(label))


# --- Stanley–Reisner correspondence ----------------------------------------


def sr_ideal_of(x):
    full = (1 << len(x.ground)) - 1
    nonfaces = kernels.minimal_transversals([full & ~m for m in x.facet_masks])
    return SquarefreeMonomialIdeal(x.ground, [x.unmask(m) for m in nonfaces])


def complex_of(ideal):
    helper = SimplicialComplex([], ground=ideal.variables)
    full = (1 << len(helper.ground)) - 1
    transversals = kernels.minimal_transversals(
        [helper.mask(g) for g in ideal.generators]
    )
    return SimplicialComplex(
        [helper.unmask(full & ~m) for m in transversals], ground=ideal.variables
    )


def project_ideal(ideal, mapping):
    """Image of the ideal under a variable substitution.

    Returns the minimal generators as exponent maps; a generator hit twice
    by the substitution yields a square.
    """
    monos = []
    for g in ideal.generators:
        m = {}
        for v in g:
            w = mapping.get(v, v)
            m[w] = m.get(w, 0) + 1
        monos.append(m)

    def divides(a, b):
        return all(b.get(v, 0) >= e for v, e in a.items())

    uniq = []
    for m in sorted(monos, key=lambda m: sum(m.values())):
        if not any(divides(k, m) for k in uniq):
            uniq.append(m)
    return sorted(uniq, key=lambda m: (sum(m.values()), monomial_text(m)))


def is_squarefree_family(monos):
    return all(e == 1 for m in monos for e in m.values())


# --- joining two variables -------------------------------------------------


def is_nonzerodivisor(x, v1, v2):
    """Whether x_{v1} - x_{v2} is a nonzero divisor: every facet meets {v1, v2}."""
    if v1 == v2:
        raise ValueError("the two variables must differ")
    return kernels.every_facet_meets(x.facet_masks, x.mask({v1, v2}))


def cuts_squarefree(x, v1, v2):
    """Whether identifying v1 with v2 keeps the ideal squarefree."""
    if v1 == v2:
        raise ValueError("the two variables must differ")
    return kernels.cuts_squarefree(x.facet_masks, x.mask({v1}), x.mask({v2}))


class PreconditionError(ValueError):
    """An operation's input fails a required combinatorial condition."""


def quotient_by_difference(x, v1, v2, merged=None):
    """The complex of the ideal obtained by identifying v1 and v2.

    Facets containing one of v1, v2 lose it; facets containing both get
    the merged vertex instead, which is named ``merged`` (default v1).
    """
    if not is_nonzerodivisor(x, v1, v2):
        raise PreconditionError(
            f"{var_name(v1)} - {var_name(v2)} is a zero divisor: some facet misses both"
        )
    if not cuts_squarefree(x, v1, v2):
        raise PreconditionError(
            f"identifying {var_name(v1)} and {var_name(v2)} creates a square generator"
        )
    merged = v1 if merged is None else merged
    pair = {v1, v2}
    rest = x.ground_set - pair
    if merged in rest:
        raise ValueError(f"merged label {merged!r} is already in use")
    facets = []
    for f in x.facets:
        core = f - pair
        facets.append(core | {merged} if pair <= f else core)
    return SimplicialComplex(facets, ground=rest | {merged})


def is_regular_forest(x, forest):
    """Whether the differences along a forest on x's ground are regular.

    For each facet and each tree of the forest at most one vertex of the
    tree may lie outside the facet.
    """
    uf = UnionFind(x.ground)
    for u, w in forest:
        if u not in uf.parent or w not in uf.parent:
            raise KeyError("forest vertex outside the ground set")
        if not uf.union(u, w):
            raise ValueError("not a forest: edge set contains a cycle")
    comps = [x.mask(c) for c in uf.classes() if len(c) > 1]
    return kernels.forest_criterion(x.facet_masks, comps)


# --- separating a variable -------------------------------------------------


@dataclass(frozen=True)
class SeparationStep:
    vertex: object
    first: frozenset   # faces that get v1
    second: frozenset  # faces that get v2
    v1: object = None
    v2: object = None
    flag_type: bool = field(default=False, compare=False)

    def labels(self):
        v1 = self.v1 if self.v1 is not None else f"{self.vertex}.0"
        v2 = self.v2 if self.v2 is not None else f"{self.vertex}.1"
        return v1, v2


def _separable_faces(x, v):
    """Faces F of x avoiding v with F ∪ {v} not a face."""
    vb = x.mask({v})
    out = []
    for m in kernels.all_faces(x.facet_masks):
        if m & vb:
            continue
        if not kernels.is_face(x.facet_masks, m | vb):
            out.append(m)
    return out


def _cover_components(masks):
    """Components of a face family under the one-element-larger relation."""
    index = set(masks)
    uf = UnionFind(masks)
    for m in masks:
        rest = m
        while rest:
            low = rest & -rest
            if m ^ low in index:
                uf.union(m, m ^ low)
            rest ^= low
    return sorted(
        (sorted(c) for c in uf.classes()), key=lambda c: c[0]
    )


def is_flag(x):
    return all(len(g) <= 2 for g in sr_ideal_of(x).generators)


def separation_candidates(x, v):
    """All ways to separate the variable of v, as :class:`SeparationStep`.

    Faces that must be split form components under covering; each split of
    the components into two nonempty groups is valid. ``flag_type`` marks
    splits induced by grouping the components of the deletion of v's
    neighborhood in a flag complex.
    """
    if v not in x.support:
        raise ValueError(f"{v!r} is not in the support")
    faces = _separable_faces(x, v)
    comps = _cover_components(faces)
    if len(comps) < 2:
        return []
    flag = is_flag(x)
    nbhd = x.neighborhood(v)
    outer = x.deletion(nbhd).components()
    where = {}
    for i, c in enumerate(outer):
        for u in c:
            where[u] = i
    out = []
    for colors in product((0, 1), repeat=len(comps) - 1):
        colors = (0,) + colors
        if 1 not in colors:
            continue
        first, second = [], []
        for c, side in zip(comps, colors):
            (first if side == 0 else second).extend(x.unmask(m) for m in c)
        flag_type = flag and _induced_by_grouping(first, second, nbhd, where)
        out.append(SeparationStep(v, frozenset(first), frozenset(second),
                                  flag_type=flag_type))
    out.sort(key=lambda s: not s.flag_type)
    return out


def _induced_by_grouping(first, second, nbhd, where):
    side = {}
    for faces, s in ((first, 0), (second, 1)):
        for f in faces:
            comps = {where.get(u) for u in f - nbhd}
            if len(comps) != 1 or None in comps:
                return False
            c = comps.pop()
            if side.setdefault(c, s) != s:
                return False
    return True


def _validate_step(x, step):
    faces = set(_separable_faces(x, step.vertex))
    first = {x.mask(f) for f in step.first}
    second = {x.mask(f) for f in step.second}
    if not first or not second:
        raise PreconditionError("both parts of the face partition must be nonempty")
    if first & second or first | second != faces:
        raise PreconditionError("parts do not partition the faces to be split")
    for part in (first, second):
        for m in part:
            rest = m
            while rest:
                low = rest & -rest
                sub = m ^ low
                if sub in faces and sub not in part:
                    raise PreconditionError("a part is not closed under taking smaller faces")
                rest ^= low


def separate(x, step):
    """Apply a separation step; returns the complex on the enlarged ground."""
    _validate_step(x, step)
    v = step.vertex
    v1, v2 = step.labels()
    rest = x.ground_set - {v}
    if v1 in rest or v2 in rest or v1 == v2:
        raise ValueError(f"split labels {v1!r}, {v2!r} collide with existing vertices")
    facets = []
    for f in x.facets:
        if v in f:
            facets.append((f - {v}) | {v1, v2})
        elif f in step.first:
            facets.append(f | {v1})
        else:
            facets.append(f | {v2})
    y = SimplicialComplex(facets, ground=rest | {v1, v2})
    original = sr_ideal_of(x)
    projected = project_ideal(sr_ideal_of(y), {v1: v, v2: v})
    if sorted_faces(frozenset(m) for m in projected) != list(original.generators) or \
            not is_squarefree_family(projected):
        raise AssertionError("separation does not project back to the original ideal")
    if not is_nonzerodivisor(y, v1, v2):
        raise AssertionError("separated difference is a zero divisor")
    return y


def _strip_split_suffix(label):
    return label[:-2] if isinstance(label, str) and label.endswith(".0") else label


def facet_preimage(x, step):
    """Map each facet of the separated complex to the facet it came from."""
    v1, v2 = step.labels()
    out = {}
    for f in separate(x, step).facets:
        if v1 in f and v2 in f:
            out[f] = (f - {v1, v2}) | {step.vertex}
        else:
            out[f] = f - {v1, v2}
    return out


def replay_joins(y, joins):
    """Undo separations: apply the (kept, removed) joins in order."""
    for kept, removed in joins:
        y = quotient_by_difference(y, kept, removed, merged=_strip_split_suffix(kept))
    return y


@dataclass
class SeparatedModel:
    complex: SimplicialComplex
    tree: DirectedTree
    joins: list                 # (kept, removed) pairs, in application order
    vertex_to_evar: dict        # ground vertex of complex -> (edge, bit)
    facet_of: dict              # tree vertex -> facet of complex
    steps: list = field(default_factory=list)

    def joins_json(self):
        return json.dumps([[k, r] for k, r in self.joins])


def separated_model(x, reverse=False):
    """Separate variables until no further separation is possible.

    The end result is the complex of a tree ideal; the returned tree is
    its hypertree, oriented so that the complex vertices correspond to the
    variables ``(edge, bit)``. Vertices are tried in label order, or in
    reverse order with ``reverse``; the end result does not depend on it
    up to isomorphism.
    """
    if not is_stacked(x):
        raise PreconditionError("complex is not stacked")
    if x.cone_apex():
        raise PreconditionError("complex is a cone")
    x = SimplicialComplex(x.facets)
    joins, steps = [], []
    while len(x.facets) > x.dimension() + 2:
        advanced = False
        order = sort_labels(x.support)
        for v in (order[::-1] if reverse else order):
            for step in separation_candidates(x, v):
                y = separate(x, step)
                if is_stacked(y) and not y.cone_apex():
                    steps.append(step)
                    joins.append(step.labels())
                    x = y
                    advanced = True
                    break
            if advanced:
                break
        if not advanced:
            raise AssertionError("stacked complex admits no separation step")
    joins.reverse()
    tree, vmap, facet_of = _tree_of_separated(x)
    return SeparatedModel(x, tree, joins, vmap, facet_of, steps)


def _tree_of_separated(x):
    from stacked_sr.tree_ideal import EVar

    facets = sorted(x.facets, key=face_key)
    names = {f: str(i) for i, f in enumerate(facets, 1)}
    h = hypertree_of(x, names=names)
    if not h.is_ordinary_tree():
        raise AssertionError("separated complex has a proper hyperedge")
    facet_of = {names[f]: f for f in facets}
    tree = Tree(list(facet_of), [tuple(sort_labels(e)) for e in h.hyperedges])
    dtree = DirectedTree(tree)
    vmap = {}
    for e, (u, w) in tree.edges.items():
        fu, fw = facet_of[u], facet_of[w]
        head = dtree.head(e)
        for vert, this in ((u, fu), (w, fw)):
            (only,) = this - (fu & fw)
            vmap[only] = EVar(e, 1 if vert == head else 0)
    if set(vmap) != set(x.support):
        raise AssertionError("tree edges do not account for every vertex")
    return dtree, vmap, facet_of
