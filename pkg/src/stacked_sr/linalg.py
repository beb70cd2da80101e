"""Exact rank and span tests for sparse integer vectors.

Vectors are dicts from coordinate labels to integers. Elimination is
fraction-free: a pivot row is combined with another row by cross
multiplication and the result divided by the gcd of its entries, so all
arithmetic stays in small integers.
"""

from math import gcd

from stacked_sr.graph_core import label_key


def _normalize(row):
    g = 0
    for c in row.values():
        g = gcd(g, c)
    if g > 1:
        row = {k: c // g for k, c in row.items()}
    return row


class RowEchelon:
    """Incrementally maintained echelon basis of a span."""

    def __init__(self, vectors=()):
        self.rows = []  # (pivot, row)
        for v in vectors:
            self.add(v)

    def reduce(self, vec):
        row = {k: c for k, c in vec.items() if c}
        for pivot, prow in self.rows:
            c = row.get(pivot)
            if not c:
                continue
            p = prow[pivot]
            out = {k: p * row.get(k, 0) for k in row}
            for k, pc in prow.items():
                out[k] = out.get(k, 0) - c * pc
            row = _normalize({k: x for k, x in out.items() if x})
        return row

    def add(self, vec):
        """Add a vector; True when it was independent of the current span."""
        row = self.reduce(vec)
        if not row:
            return False
        pivot = min(row, key=label_key)
        self.rows.append((pivot, row))
        return True

    def contains(self, vec):
        return not self.reduce(vec)

    @property
    def rank(self):
        return len(self.rows)


def rank(vectors):
    return RowEchelon(vectors).rank


def in_span(vec, vectors):
    return RowEchelon(vectors).contains(vec)


def span_contains(big, small):
    """Whether every vector of ``small`` lies in the span of ``big``."""
    ech = RowEchelon(big)
    return all(ech.contains(v) for v in small)


def same_span(a, b):
    return span_contains(a, b) and span_contains(b, a)
