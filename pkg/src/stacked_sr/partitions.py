"""Set partitions and the bijection between vertex and edge partitions.

A partition of the vertices into independent blocks corresponds to a
partition of the edges with one block fewer. Going from vertices to edges,
two vertices of the same block with no other vertex of that block between
them glue the edges at the two ends of their path. Going back, two edges of
the same block with no other edge of that block between them glue the two
outer endpoints of the path they span.
"""

import json

from stacked_sr.graph_core import UnionFind, label_key, sort_labels


class SetPartition:
    """Disjoint nonempty blocks covering a finite label set."""

    __slots__ = ("blocks", "universe", "_where")

    def __init__(self, blocks, universe=None):
        blocks = [frozenset(b) for b in blocks]
        if any(not b for b in blocks):
            raise ValueError("partition blocks must be nonempty")
        covered = frozenset().union(*blocks) if blocks else frozenset()
        if sum(len(b) for b in blocks) != len(covered):
            raise ValueError("partition blocks overlap")
        if universe is not None and frozenset(universe) != covered:
            raise ValueError("partition blocks do not cover the label set")
        self.universe = covered
        self.blocks = tuple(sorted(blocks, key=_block_key))
        self._where = {x: i for i, b in enumerate(self.blocks) for x in b}

    @classmethod
    def singletons(cls, items):
        return cls([{x} for x in items])

    @classmethod
    def whole(cls, items):
        items = list(items)
        return cls([items] if items else [])

    def block_of(self, x):
        return self.blocks[self._where[x]]

    def same_block(self, x, y):
        return self._where[x] == self._where[y]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def nontrivial(self):
        return [b for b in self.blocks if len(b) > 1]

    def rank(self):
        """Number of elements minus number of blocks."""
        return len(self.universe) - len(self.blocks)

    def refines(self, other):
        """Plain refinement: each block sits inside a block of other."""
        return all(any(b <= c for c in other.blocks) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, SetPartition) and set(self.blocks) == set(other.blocks)

    def __hash__(self):
        return hash(frozenset(self.blocks))

    def __repr__(self):
        return " | ".join("{" + ",".join(map(str, sort_labels(b))) + "}" for b in self.blocks)

    def to_lists(self):
        return [[str(x) for x in sort_labels(b)] for b in self.blocks]

    def to_json(self):
        return json.dumps(self.to_lists())


def _block_key(b):
    return tuple(label_key(x) for x in sort_labels(b))


def partition_from_lists(data, universe=None):
    try:
        blocks = [[str(x) for x in b] for b in data]
    except TypeError as exc:
        raise ValueError(f"malformed partition document: {exc}") from exc
    return SetPartition(blocks, universe)


def load_partition(path, universe=None):
    with open(path) as fh:
        return partition_from_lists(json.load(fh), universe)


# --- enumeration -------------------------------------------------------------


def set_partitions(items, blocks=None, allowed=None):
    """Partitions of ``items`` via restricted-growth strings.

    ``blocks`` fixes the number of blocks; ``allowed(x, block)`` may veto
    adding x to a partial block and is used to prune early.
    """
    items = sort_labels(items)
    n = len(items)
    if n == 0:
        if blocks in (None, 0):
            yield SetPartition([])
        return
    if blocks is not None and not 1 <= blocks <= n:
        return
    partial = []

    def extend(i):
        if i == n:
            if blocks is None or len(partial) == blocks:
                yield SetPartition(partial)
            return
        # Too few items left to open the remaining blocks.
        if blocks is not None and len(partial) + (n - i) < blocks:
            return
        x = items[i]
        for b in partial:
            if allowed is None or allowed(x, b):
                b.append(x)
                yield from extend(i + 1)
                b.pop()
        if blocks is None or len(partial) < blocks:
            partial.append([x])
            yield from extend(i + 1)
            partial.pop()

    yield from extend(0)


def enumerate_independent_vertex_partitions(t, r=None):
    """Partitions of the vertices into r blocks with no edge inside a block."""
    def allowed(x, block):
        return all(t.edge_between(x, y) is None for y in block)

    return list(set_partitions(t.vertices, r, allowed))


def enumerate_edge_partitions(t, r=None, independent_only=False):
    """Partitions of the edges into r blocks; optionally pairwise disjoint edges."""
    allowed = None
    if independent_only:
        def allowed(e, block):
            ends = set(t.ends(e))
            return all(not ends & set(t.ends(f)) for f in block)
    return list(set_partitions(t.edge_ids, r, allowed))


# --- the bijection -------------------------------------------------------------


class DependentBlockError(ValueError):
    def __init__(self, block):
        self.block = block
        names = ",".join(map(str, sort_labels(block)))
        super().__init__(f"block {{{names}}} is not independent")


class AdjacentEdgesError(ValueError):
    def __init__(self, block):
        self.block = block
        names = ",".join(map(str, sort_labels(block)))
        super().__init__(f"block {{{names}}} contains adjacent edges")


def _check_cover(p, universe, what):
    if p.universe != frozenset(universe):
        raise ValueError(f"not a partition of the {what}")


def vertex_seed_pairs(q, t):
    """Same-block vertex pairs with no other vertex of the block between them."""
    pairs = []
    for b in q.blocks:
        for v in sort_labels(b):
            for w in sort_labels(b):
                if label_key(w) <= label_key(v):
                    continue
                inner = t.path(v, w).vertices[1:-1]
                if not any(u in b for u in inner):
                    pairs.append((v, w))
    return pairs


def vertex_to_edge_partition(q, t, order=None):
    """Edge partition with one block fewer than the independent vertex partition q.

    ``order`` optionally permutes the seed pairs; the result does not
    depend on it.
    """
    _check_cover(q, t.vertices, "vertices")
    for b in q.blocks:
        if not t.is_independent_vertex_set(b):
            raise DependentBlockError(b)
    uf = UnionFind(t.edge_ids)
    pairs = vertex_seed_pairs(q, t)
    if order is not None:
        pairs = [pairs[i] for i in order]
    for v, w in pairs:
        p = t.path(v, w)
        uf.union(p.first_edge, p.last_edge)
    return SetPartition(uf.classes())


def _outer_ends(t, f, g):
    fa, fb = t.ends(f)
    ga, gb = t.ends(g)
    best = None
    for x in (fa, fb):
        for y in (ga, gb):
            d = t.distance(x, y)
            if best is None or d < best[0]:
                best = (d, x, y)
    _, x, y = best
    return (fb if x == fa else fa), (gb if y == ga else ga)


def edge_seed_pairs(p, t):
    """Same-block edge pairs with no other edge of the block between them."""
    pairs = []
    for b in p.blocks:
        for f in sort_labels(b):
            for g in sort_labels(b):
                if label_key(g) <= label_key(f):
                    continue
                inner = t.edge_path(f, g)[1:-1]
                if not any(e in b for e in inner):
                    pairs.append((f, g))
    return pairs


def edge_to_vertex_partition(p, t, order=None):
    """Independent vertex partition with one block more than the edge partition p."""
    _check_cover(p, t.edge_ids, "edges")
    uf = UnionFind(t.vertices)
    pairs = edge_seed_pairs(p, t)
    if order is not None:
        pairs = [pairs[i] for i in order]
    for f, g in pairs:
        uf.union(*_outer_ends(t, f, g))
    return SetPartition(uf.classes())
