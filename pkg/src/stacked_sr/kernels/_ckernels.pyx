# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Masks wider than 64 bits fall through to the pure-Python versions.
"""

from libc.stdlib cimport malloc, free
from libc.stdint cimport uint64_t

from stacked_sr.kernels import _pykernels as _py

ctypedef uint64_t mask_t

cdef mask_t LIMIT = 0xFFFFFFFFFFFFFFFF


cdef inline int _popcount(mask_t m) nogil:
    return __builtin_popcountll(m)


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef bint _fits(object masks):
    for m in masks:
        if m < 0 or m > LIMIT:
            return False
    return True


cdef mask_t* _to_array(object masks, Py_ssize_t n) except NULL:
    cdef mask_t* arr = <mask_t*>malloc((n if n > 0 else 1) * sizeof(mask_t))
    if arr == NULL:
        raise MemoryError()
    cdef Py_ssize_t i = 0
    for m in masks:
        arr[i] = <mask_t>m
        i += 1
    return arr


cdef list _reduce(list masks, bint keep_maximal):
    # Sort so that a set can only be absorbed by sets already kept.
    cdef list uniq
    if keep_maximal:
        uniq = sorted(set(masks), key=lambda m: (-_py.popcount(m), m))
    else:
        uniq = sorted(set(masks), key=lambda m: (_py.popcount(m), m))
    cdef Py_ssize_t n = len(uniq)
    cdef mask_t* arr = _to_array(uniq, n)
    cdef mask_t* kept = <mask_t*>malloc((n if n > 0 else 1) * sizeof(mask_t))
    cdef Py_ssize_t i, j, nk = 0
    cdef mask_t m, k
    cdef bint absorbed
    try:
        for i in range(n):
            m = arr[i]
            absorbed = False
            for j in range(nk):
                k = kept[j]
                if keep_maximal:
                    if m & k == m:
                        absorbed = True
                        break
                else:
                    if m & k == k:
                        absorbed = True
                        break
            if not absorbed:
                kept[nk] = m
                nk += 1
        out = [kept[i] for i in range(nk)]
    finally:
        free(arr)
        free(kept)
    out.sort()
    return out


def popcount(m):
    return _py.popcount(m)


def maximal_sets(masks):
    masks = list(masks)
    if not _fits(masks):
        return _py.maximal_sets(masks)
    return _reduce(masks, True)


def minimal_sets(masks):
    masks = list(masks)
    if not _fits(masks):
        return _py.minimal_sets(masks)
    return _reduce(masks, False)


def minimal_transversals(masks):
    masks = list(masks)
    if not _fits(masks):
        return _py.minimal_transversals(masks)
    cdef list current = [0]
    cdef list nxt
    cdef mask_t s, h, rest, low
    for s_obj in _reduce(masks, False):
        s = <mask_t>s_obj
        if s == 0:
            return []
        nxt = []
        for h_obj in current:
            h = <mask_t>h_obj
            if h & s:
                nxt.append(h)
            else:
                rest = s
                while rest:
                    low = rest & (~rest + 1)
                    nxt.append(h | low)
                    rest ^= low
        current = _reduce(nxt, False)
    return current


def all_faces(facets):
    facets = list(facets)
    if not _fits(facets):
        return _py.all_faces(facets)
    cdef set seen = set()
    cdef mask_t f, sub
    for f_obj in facets:
        f = <mask_t>f_obj
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
    cdef dict counts = {}
    cdef int k
    for m in all_faces(facets):
        k = _popcount(<mask_t>m) if m <= LIMIT else _py.popcount(m)
        counts[k] = counts.get(k, 0) + 1
    top = max(counts) if counts else -1
    return [counts.get(i, 0) for i in range(top + 1)]


cdef bint _is_face(mask_t* arr, Py_ssize_t n, mask_t m) nogil:
    cdef Py_ssize_t i
    for i in range(n):
        if m & arr[i] == m:
            return True
    return False


def is_face(facets, m):
    facets = list(facets)
    if not _fits(facets) or m < 0 or m > LIMIT:
        return _py.is_face(facets, m)
    cdef Py_ssize_t n = len(facets)
    cdef mask_t* arr = _to_array(facets, n)
    try:
        return _is_face(arr, n, <mask_t>m)
    finally:
        free(arr)


def every_facet_meets(facets, m):
    facets = list(facets)
    if not _fits(facets) or m < 0 or m > LIMIT:
        return _py.every_facet_meets(facets, m)
    cdef Py_ssize_t n = len(facets), i
    cdef mask_t* arr = _to_array(facets, n)
    cdef mask_t mm = <mask_t>m
    try:
        for i in range(n):
            if not arr[i] & mm:
                return False
        return True
    finally:
        free(arr)


def cuts_squarefree(facets, b1, b2):
    facets = list(facets)
    if not _fits(facets) or not _fits((b1, b2)):
        return _py.cuts_squarefree(facets, b1, b2)
    cdef Py_ssize_t n = len(facets), i, j
    cdef mask_t* arr = _to_array(facets, n)
    cdef mask_t m1 = <mask_t>b1, m2 = <mask_t>b2
    cdef mask_t both = m1 | m2, core
    try:
        for i in range(n):
            if not arr[i] & m1:
                continue
            for j in range(n):
                if not arr[j] & m2:
                    continue
                core = arr[i] & arr[j] & ~both
                if not _is_face(arr, n, core | both):
                    return False
        return True
    finally:
        free(arr)


def forest_criterion(facets, components):
    facets = list(facets)
    components = list(components)
    if not _fits(facets) or not _fits(components):
        return _py.forest_criterion(facets, components)
    cdef Py_ssize_t n = len(facets), nc = len(components), i, j
    cdef mask_t* arr = _to_array(facets, n)
    cdef mask_t* comps = _to_array(components, nc)
    cdef mask_t miss
    try:
        for i in range(n):
            for j in range(nc):
                miss = comps[j] & ~arr[i]
                if miss & (miss - 1):
                    return False
        return True
    finally:
        free(arr)
        free(comps)
