"""Exhaustive property sweeps over small trees and complexes.

Each suite takes a size bound and returns a list of counterexample
descriptions; an empty list means the property held on every instance.
The CLI ``verify`` command and the test suite both run these.
"""

from itertools import combinations
import random

from stacked_sr import ball, limits, graph_core as gc, partitions as pt, regular as rg
from stacked_sr import simplicial as sc, sr_ideal as sr, tree_ideal as ti
from stacked_sr.linalg import same_span, in_span


# Sizes up to this bound are swept exhaustively; larger sizes need sampling.
DEFAULT_EXHAUSTIVE_CAP = 8

_sampling = {"rng": None, "count": 0}


def set_sampling(seed=None, count=0):
    """Sample ``count`` random trees per size above the exhaustive cap.

    All randomness comes from one generator seeded with ``seed``; with
    ``count == 0`` sizes above the cap raise :class:`limits.CapExceeded`.
    """
    _sampling["rng"] = random.Random(seed) if count else None
    _sampling["count"] = count


def _shapes(max_vertices, lo=1):
    exhaustive = limits.cap(DEFAULT_EXHAUSTIVE_CAP)
    for n in range(lo, max_vertices + 1):
        if n <= exhaustive:
            yield from gc.tree_shapes(n, cap=exhaustive)
        elif _sampling["rng"] is not None:
            for _ in range(_sampling["count"]):
                yield gc.random_tree(n, _sampling["rng"])
        else:
            raise limits.CapExceeded(
                f"tree size {n} exceeds exhaustive cap {exhaustive} "
                f"(set {limits.ENV_VAR} or sample)"
            )


def _directed_shapes(max_vertices, lo=2):
    for t in _shapes(max_vertices, lo):
        yield gc.DirectedTree(t)


def _all_vertex_partitions(t):
    return list(pt.set_partitions(t.vertices))


def _forests(vertices):
    pairs = list(combinations(vertices, 2))
    for k in range(len(vertices)):
        for es in combinations(pairs, k):
            if rg.is_forest(vertices, es):
                yield es


def stacked_corpus(max_vertices):
    """Stacked complexes from edge-partition quotients of small tree ideals.

    Ground vertices are renamed to ``"1", "2", ...`` so that separation
    can mint split labels.
    """
    out = []
    for t in _directed_shapes(max_vertices):
        for p in pt.set_partitions(t.edge_ids):
            x = ball.quotient_complex(t, p).complex
            names = {v: str(i) for i, v in enumerate(x.ground, 1)}
            out.append(x.relabeled(names))
    return out


# --- graph_core -----------------------------------------------------------------


def path_reversal(max_size):
    bad = []
    for t in _shapes(max_size):
        for v in t.vertices:
            for w in t.vertices:
                if t.path(v, w).reversed() != t.path(w, v):
                    bad.append(f"{t}: path {v}..{w}")
    return bad


def alignment_distance(max_size):
    bad = []
    for n in range(3, min(max_size, 7) + 1):
        for t in gc.enumerate_trees(n):
            for v, u, w in _triples(t.vertices):
                lhs = gc.is_aligned(t, v, u, w)
                rhs = t.distance(v, u) + t.distance(u, w) == t.distance(v, w)
                if lhs != rhs:
                    bad.append(f"{t}: {v},{u},{w}")
    return bad


def _triples(vs):
    for v in vs:
        for u in vs:
            for w in vs:
                if len({v, u, w}) == 3:
                    yield v, u, w


def _hypertrees_on(vertices):
    # Hypertrees arising as block components of edge partitions of trees.
    seen = {}
    n = len(vertices)
    for t in gc.enumerate_trees(n, cap=n):
        for p in pt.set_partitions(t.edge_ids):
            h = ball.quotient_hypertree(t, p)
            seen[h] = h
    return list(seen)


def refines_partial_order(max_size):
    bad = []
    for n in range(1, min(max_size, 4) + 1):
        hs = _hypertrees_on([str(i) for i in range(1, n + 1)])
        for a in hs:
            if not gc.refines(a, a):
                bad.append(f"not reflexive at {a}")
            for b in hs:
                if a != b and gc.refines(a, b) and gc.refines(b, a):
                    bad.append(f"not antisymmetric: {a}, {b}")
                if not gc.refines(a, b):
                    continue
                for c in hs:
                    if gc.refines(b, c) and not gc.refines(a, c):
                        bad.append(f"not transitive: {a}, {b}, {c}")
    return bad


# --- simplicial -----------------------------------------------------------------


def hypertree_of_stacked(max_size):
    bad = []
    for x in stacked_corpus(max_size):
        try:
            h = sc.hypertree_of(x)
        except ValueError as exc:
            bad.append(f"{x}: {exc}")
            continue
        if len(h.vertices) != len(x.facets):
            bad.append(f"{x}: hypertree has wrong vertex count")
    return bad


def noncone_facet_count(max_size):
    bad = []
    for x in stacked_corpus(max_size):
        if not x.cone_apex() and len(x.facets) < x.dimension() + 2:
            bad.append(f"{x}: fewer than dim+2 facets")
    return bad


def separated_unique(max_size):
    bad = []
    for x in stacked_corpus(max_size):
        if x.cone_apex():
            continue
        h = sc.hypertree_of(x)
        models = [sr.separated_model(x), sr.separated_model(x, reverse=True)]
        for m in models:
            if not sc.is_isomorphic(m.complex, ti.tree_complex(m.tree)):
                bad.append(f"{x}: separated model is not a tree-ideal complex")
            if m.complex.relabeled(m.vertex_to_evar) != ti.tree_complex(m.tree):
                bad.append(f"{x}: returned vertex map is not an isomorphism")
            if sr.replay_joins(m.complex, m.joins) != x:
                bad.append(f"{x}: joins do not replay to the input")
        # With an ordinary tree as hypertree every separation keeps that
        # tree, so the end result is unique up to isomorphism.
        if h.is_ordinary_tree() and not sc.is_isomorphic(models[0].complex, models[1].complex):
            bad.append(f"{x}: separation choices disagree")
    return bad


# --- sr_ideal -------------------------------------------------------------------


def sr_round_trip(max_size):
    bad = []
    for x in stacked_corpus(max_size):
        if sr.complex_of(sr.sr_ideal_of(x)) != x:
            bad.append(f"{x}: complex -> ideal -> complex")
        i = sr.sr_ideal_of(x)
        if sr.sr_ideal_of(sr.complex_of(i)) != i:
            bad.append(f"{x}: ideal -> complex -> ideal")
    return bad


def separation_properties(max_size):
    """Projection, nonzero divisor and refinement for every separation."""
    bad = []
    for x in stacked_corpus(max_size):
        h = sc.hypertree_of(x, names={f: f for f in x.facets})
        for v in x.support:
            for step in sr.separation_candidates(x, v):
                try:
                    y = sr.separate(x, step)
                except AssertionError as exc:
                    bad.append(f"{x} at {v}: {exc}")
                    continue
                v1, v2 = step.labels()
                if not sr.is_nonzerodivisor(y, v1, v2):
                    bad.append(f"{x} at {v}: zero divisor")
                if sc.is_stacked(y):
                    hy = sc.hypertree_of(y, names=sr.facet_preimage(x, step))
                    if not gc.refines(hy, h):
                        bad.append(f"{x} at {v}: hypertree does not refine")
    return bad


# --- tree_ideal -----------------------------------------------------------------


def orientation_independence(max_size):
    bad = []
    for t in _directed_shapes(min(max_size, 7)):
        base = ti.tree_ideal(t)
        edges = t.edge_ids
        for k in range(len(edges) + 1):
            for flip in combinations(edges, k):
                t2, phi = ti.reorient(t, flip)
                if base.relabeled(phi) != ti.tree_ideal(t2):
                    bad.append(f"{t} flipping {flip}")
    return bad


def facet_formula(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        if not ti.check_facet_formula(t):
            bad.append(f"{t}")
    return bad


def tree_complex_stacked(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        x = ti.tree_complex(t)
        if not sc.is_stacked(x) or x.cone_apex():
            bad.append(f"{t}: not a non-cone stacked complex")
            continue
        if x.dimension() != len(t.edge_ids) - 1:
            bad.append(f"{t}: wrong dimension")
        names = {f: v for v, f in ti.tree_ideal_facets(t).items()}
        if sc.hypertree_of(x, names=names) != gc.Hypertree.from_tree(t.tree):
            bad.append(f"{t}: hypertree is not the tree")
    return bad


def difference_additivity(max_size):
    bad = []
    for t in _directed_shapes(max_size, lo=3):
        for v, u, w in _triples(t.vertices):
            if not gc.is_nonaligned(t.tree, (v, u, w)):
                continue
            total = {}
            for a, b in ((v, u), (u, w)):
                for x, c in ti.difference_of_pair(t, a, b).items():
                    total[x] = total.get(x, 0) + c
            total = {x: c for x, c in total.items() if c}
            if total != ti.difference_of_pair(t, v, w):
                bad.append(f"{t}: h({v},{u}) + h({u},{w}) != h({v},{w})")
    return bad


# --- regular --------------------------------------------------------------------


def regular_equivalence(max_size, labeled=True):
    bad = []
    for n in range(2, max_size + 1):
        trees = gc.enumerate_trees(n) if labeled else gc.tree_shapes(n)
        forests = list(_forests([str(i) for i in range(1, n + 1)]))
        for t in trees:
            d = gc.DirectedTree(t)
            x = ti.tree_complex(d)
            for g in forests:
                if rg.is_regular_basis(g, d) != rg.is_regular_by_facets(g, d, x):
                    bad.append(f"{t}: forest {g}")
    return bad


def span_uniqueness(max_size):
    bad = []
    for t in _directed_shapes(min(max_size, 6)):
        for k in range(2, len(t.vertices) + 1):
            for u in combinations(t.vertices, k):
                spans = [
                    [ti.difference_of_pair(t, v, w)
                     for v, w in rg.canonical_flowing_tree(u, t.tree, c).edges]
                    for c in t.vertices
                ]
                if not all(same_span(spans[0], s) for s in spans[1:]):
                    bad.append(f"{t}: U={u}")
    return bad


def partition_span_bijection(max_size):
    bad = []
    for t in _directed_shapes(min(max_size, 6)):
        n = len(t.vertices)
        spaces = set()
        for es in _forests(t.vertices):
            if rg.is_regular_basis(es, t):
                spaces.add(rg.partition_of_basis(es, t))
        parts = _all_vertex_partitions(t)
        if spaces != set(parts):
            bad.append(f"{t}: {len(spaces)} spans vs {len(parts)} partitions")
        for q in parts:
            basis = rg.space_of_vertex_partition(q, t)
            if len(basis.differences) != n - len(q.blocks):
                bad.append(f"{t}: basis size for {q}")
            if not rg.is_regular_basis(basis.edges(), t):
                bad.append(f"{t}: canonical basis of {q} not regular")
    return bad


def squarefree_criterion(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        for q in _all_vertex_partitions(t):
            combinatorial = rg.quotient_is_squarefree(q, t)
            x, _ = rg.stepwise_quotient(q, t)
            projected = sr.is_squarefree_family(rg.projected_generators(q, t))
            if combinatorial != (x is not None) or combinatorial != projected:
                bad.append(f"{t}: {q}")
    return bad


def boolean_interval(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        parts = _all_vertex_partitions(t)
        for q in parts:
            below = [qp for qp in parts if rg.partition_leq(qp, q, t)]
            if len(below) != 2 ** q.rank():
                bad.append(f"{t}: interval below {q} has {len(below)}")
            if set(below) != set(rg.interval_below(q, t)):
                bad.append(f"{t}: interval enumeration differs for {q}")
    return bad


def order_matches_span(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        parts = _all_vertex_partitions(t)
        bases = {q: rg.space_of_vertex_partition(q, t).vectors() for q in parts}
        from stacked_sr.linalg import RowEchelon
        echelons = {q: RowEchelon(v) for q, v in bases.items()}
        for q in parts:
            ech = echelons[q]
            for qp in parts:
                by_span = all(ech.contains(v) for v in bases[qp])
                if rg.partition_leq(qp, q, t) != by_span:
                    bad.append(f"{t}: {qp} vs {q}")
    return bad


def endpoint_difference_in_span(max_size):
    bad = []
    for t in _directed_shapes(min(max_size, 6), lo=3):
        for k in range(2, len(t.vertices) + 1):
            for u in combinations(t.vertices, k):
                s = rg.canonical_flowing_tree(u, t.tree, u[0])
                vecs = [ti.difference_of_pair(t, a, b) for a, b in s.edges]
                for v, w in combinations(u, 2):
                    inner = t.path(v, w).vertices[1:-1]
                    if any(x in u for x in inner):
                        continue
                    if not in_span(ti.difference_of_pair(t, v, w), vecs):
                        bad.append(f"{t}: U={u}, pair {v},{w}")
    return bad


# --- partitions ------------------------------------------------------------------


def bijection_round_trip(max_size):
    bad = []
    for t in _shapes(max_size, lo=2):
        for q in pt.enumerate_independent_vertex_partitions(t):
            p = pt.vertex_to_edge_partition(q, t)
            if len(p) != len(q) - 1 or pt.edge_to_vertex_partition(p, t) != q:
                bad.append(f"{t}: vertex partition {q}")
        for p in pt.enumerate_edge_partitions(t):
            q = pt.edge_to_vertex_partition(p, t)
            if len(q) != len(p) + 1 or pt.vertex_to_edge_partition(q, t) != p:
                bad.append(f"{t}: edge partition {p}")
    return bad


def count_identity(max_size):
    bad = []
    for t in _shapes(max_size, lo=2):
        for r in range(1, len(t.edge_ids) + 1):
            a = len(pt.enumerate_independent_vertex_partitions(t, r + 1))
            b = len(pt.enumerate_edge_partitions(t, r))
            if a != b:
                bad.append(f"{t}, r={r}: {a} vs {b}")
    return bad


def squarefree_domain(max_size):
    bad = []
    for t in _shapes(min(max_size, 7), lo=2):
        for q in pt.set_partitions(t.vertices):
            try:
                pt.vertex_to_edge_partition(q, t)
                in_domain = True
            except pt.DependentBlockError:
                in_domain = False
            if in_domain != rg.quotient_is_squarefree(q, t):
                bad.append(f"{t}: {q}")
    return bad


# --- ball -----------------------------------------------------------------------


def _edge_partitions(t, independent_only=False):
    return pt.enumerate_edge_partitions(t.tree, independent_only=independent_only)


def facet_routes(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        for p in _edge_partitions(t):
            qc = ball.quotient_complex(t, p)
            if qc.complex != ball.quotient_complex_by_joins(t, p):
                bad.append(f"{t}: {p}")
            if any(len(f) != len(p) for f in qc.facet_index.values()):
                bad.append(f"{t}: facet size for {p}")
    return bad


def class_description(max_size):
    """Merged classes match the maximal mutually visible edge sets."""
    bad = []
    for t in _directed_shapes(max_size):
        for p in _edge_partitions(t):
            cl = ball.variable_classes(t, p)
            merged = sorted(sorted(x.edge for x in c) for c in cl.merged())
            expected = sorted(
                sorted(s) for sets in ball.maximal_edge_sets(t, p).values()
                for s in sets if len(s) > 1
            )
            if merged != expected:
                bad.append(f"{t}: {p}")
    return bad


def codim_one_monochromatic(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        for p in _edge_partitions(t):
            qc = ball.quotient_complex(t, p)
            for v, w in combinations(t.vertices, 2):
                fv, fw = qc.facet_index[v], qc.facet_index[w]
                shares = len(fv & fw) == len(fv) - 1
                path = t.path(v, w).edges
                mono = len({p.block_of(e) for e in path}) == 1
                if shares != mono:
                    bad.append(f"{t}: {p}, {v}-{w}")
            for e in t.edge_ids:
                a, b = t.tree.ends(e)
                fe = ball.shared_face(t, p, e, qc.classes)
                if fe != qc.facet_index[a] & qc.facet_index[b] or len(fe) != len(p) - 1:
                    bad.append(f"{t}: {p}, shared face at {e}")
    return bad


def ball_criterion(max_size):
    bad = []
    for t in _directed_shapes(max_size):
        for p in _edge_partitions(t):
            qc = ball.quotient_complex(t, p)
            h = ball.quotient_hypertree(t, p)
            if h != ball.hypertree_from_complex(qc):
                bad.append(f"{t}: {p} hypertree mismatch")
            if h.is_ordinary_tree() != ball.is_independent_edge_partition(p, t):
                bad.append(f"{t}: {p} ordinary-tree criterion")
    return bad


def boundary_spheres(max_size):
    """Every independent edge partition gives T' = T and a boundary sphere."""
    bad = []
    for t in _directed_shapes(max_size):
        plain = gc.Hypertree.from_tree(t.tree)
        for p in _edge_partitions(t, independent_only=True):
            if ball.quotient_hypertree(t, p) != plain:
                bad.append(f"{t}: {p} T' differs from T")
            b = ball.boundary_ideal(t, p)
            if b.degenerate:
                continue
            qc = ball.quotient_complex(t, p)
            if b.complex != ball.boundary_by_faces(qc, b.interior_faces):
                bad.append(f"{t}: {p} boundary ideal vs face filter")
            if not ball.is_sphere(b.complex, len(p) - 2):
                bad.append(f"{t}: {p} boundary is not a sphere")
            if len(p) == 3 and len(ball.cycle_order(b.complex)) != len(qc.complex.support):
                bad.append(f"{t}: {p} boundary cycle misses vertices")
    return bad


def catalan_counts(max_size):
    bad = []
    for n in range(3, max(3, max_size) + 1):
        got = {frozenset(x.triangles) for x in ball.enumerate_polygon_triangulations(n)}
        if got != ball.brute_force_triangulations(n) or len(got) != ball.catalan(n - 2):
            bad.append(f"n={n}: {len(got)} triangulations")
    return bad


def ball_length(max_size):
    bad = []
    for t in _shapes(max_size, lo=2):
        if ball.max_ball_sequence_length(t) != ball.max_ball_length_by_search(t):
            bad.append(f"{t}")
    return bad


SUITES = {
    "graph_core": {
        "path_reversal": path_reversal,
        "alignment_distance": alignment_distance,
        "refines_partial_order": refines_partial_order,
    },
    "simplicial": {
        "hypertree_of_stacked": hypertree_of_stacked,
        "noncone_facet_count": noncone_facet_count,
    },
    "sr_ideal": {
        "sr_round_trip": sr_round_trip,
        "separation_properties": separation_properties,
        "separated_unique": separated_unique,
    },
    "tree_ideal": {
        "orientation_independence": orientation_independence,
        "facet_formula": facet_formula,
        "tree_complex_stacked": tree_complex_stacked,
        "difference_additivity": difference_additivity,
    },
    "regular": {
        "regular_equivalence": regular_equivalence,
        "span_uniqueness": span_uniqueness,
        "partition_span_bijection": partition_span_bijection,
        "squarefree_criterion": squarefree_criterion,
        "boolean_interval": boolean_interval,
        "order_matches_span": order_matches_span,
        "endpoint_difference_in_span": endpoint_difference_in_span,
    },
    "partitions": {
        "bijection_round_trip": bijection_round_trip,
        "count_identity": count_identity,
        "squarefree_domain": squarefree_domain,
    },
    "ball": {
        "facet_routes": facet_routes,
        "class_description": class_description,
        "codim_one_monochromatic": codim_one_monochromatic,
        "ball_criterion": ball_criterion,
        "boundary_spheres": boundary_spheres,
        "catalan_counts": catalan_counts,
        "ball_length": ball_length,
    },
}


def suite_names():
    return sorted(name for group in SUITES.values() for name in group)


def resolve(name):
    """Suites selected by a property name, a module name, or ``all``."""
    if name == "all":
        return [(n, f) for group in SUITES.values() for n, f in group.items()]
    if name in SUITES:
        return list(SUITES[name].items())
    for group in SUITES.values():
        if name in group:
            return [(name, group[name])]
    raise KeyError(name)
