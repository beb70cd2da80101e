"""Pure-Python set-system kernels on integer bitmasks.

Every function here has a twin of the same name and signature in the
compiled ``_ckernels`` module; the two must agree on every input.
"""


def popcount(m):
    return bin(m).count("1")


def maximal_sets(masks):
    """Drop duplicates and every mask contained in another one."""
    uniq = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept = []
    for m in uniq:
        for k in kept:
            if m & k == m:
                break
        else:
            kept.append(m)
    return sorted(kept)


def minimal_sets(masks):
    """Drop duplicates and every mask containing another one."""
    uniq = sorted(set(masks), key=lambda m: (popcount(m), m))
    kept = []
    for m in uniq:
        for k in kept:
            if m & k == k:
                break
        else:
            kept.append(m)
    return sorted(kept)


def minimal_transversals(masks):
    """Minimal hitting sets of a family of bitmasks (Berge's algorithm).

    An empty member makes the family unhittable and yields ``[]``; an
    empty family yields ``[0]``.
    """
    current = [0]
    for s in minimal_sets(masks):
        if s == 0:
            return []
        nxt = []
        for h in current:
            if h & s:
                nxt.append(h)
            else:
                rest = s
                while rest:
                    low = rest & -rest
                    nxt.append(h | low)
                    rest ^= low
        current = minimal_sets(nxt)
    return current


def all_faces(facets):
    """Every subset of every facet, as a sorted list of masks."""
    seen = set()
    for f in facets:
        if f in seen:
            continue
        sub = f
        while True:
            seen.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    return sorted(seen)


def face_counts(facets):
    """Number of faces of each cardinality, index 0 is the empty face."""
    counts = {}
    for m in all_faces(facets):
        k = popcount(m)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts) if counts else -1
    return [counts.get(k, 0) for k in range(top + 1)]


def is_face(facets, m):
    for f in facets:
        if m & f == m:
            return True
    return False


def every_facet_meets(facets, m):
    for f in facets:
        if not f & m:
            return False
    return True


def cuts_squarefree(facets, b1, b2):
    both = b1 | b2
    with1 = [f for f in facets if f & b1]
    with2 = [f for f in facets if f & b2]
    for a in with1:
        for b in with2:
            core = a & b & ~both
            if not is_face(facets, core | both):
                return False
    return True


def forest_criterion(facets, components):
    """Each facet misses at most one vertex of each component."""
    for f in facets:
        outside = ~f
        for c in components:
            miss = c & outside
            if miss & (miss - 1):
                return False
    return True
