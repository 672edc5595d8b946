"""Clusterings and lattices of flats of graphical and rational vector matroids."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .graph import components
from .poset import FinitePoset, PosetError


class Clustering:
    """Set partition of ``1..n`` in canonical form.

    Blocks are sorted tuples, ordered by their minimum element.  Equality
    and hashing use the canonical block tuple.
    """

    __slots__ = ("blocks", "n", "_block_of")

    def __init__(self, blocks):
        bs = [tuple(sorted(int(v) for v in b)) for b in blocks]
        if any(len(b) == 0 for b in bs):
            raise ValueError("empty block")
        bs.sort()
        flat = [v for b in bs for v in b]
        n = len(flat)
        if sorted(flat) != list(range(1, n + 1)):
            raise ValueError(f"blocks {bs} do not partition 1..{n}")
        self.blocks = tuple(bs)
        self.n = n
        self._block_of = None

    @classmethod
    def discrete(cls, n):
        return cls([v] for v in range(1, n + 1))

    @classmethod
    def single(cls, n):
        return cls([range(1, n + 1)])

    @property
    def rank(self):
        return self.n - len(self.blocks)

    def block_of(self, v):
        """Index of the block containing vertex ``v``."""
        if self._block_of is None:
            self._block_of = {u: k for k, b in enumerate(self.blocks) for u in b}
        return self._block_of[v]

    def refines(self, other):
        return all(len({other.block_of(v) for v in b}) == 1 for b in self.blocks)

    def merge_map(self, coarser):
        """For each block of ``self``, the index of the block of ``coarser`` containing it."""
        return [coarser.block_of(b[0]) for b in self.blocks]

    def is_flat_of(self, g):
        return all(len(components(g.induced(b), g.induced(b).edges).blocks) == 1 for b in self.blocks)

    def inner_edges(self, g):
        """Edges of ``g`` with both endpoints in one block."""
        return tuple(e for e in g.edges if self.block_of(e[0]) == self.block_of(e[1]))

    def __eq__(self, other):
        return isinstance(other, Clustering) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __lt__(self, other):
        return (self.rank, self.blocks) < (other.rank, other.blocks)

    def __repr__(self):
        return f"Clustering({[list(b) for b in self.blocks]})"

    def __str__(self):
        return "{" + "|".join(" ".join(map(str, b)) for b in self.blocks) + "}"


def set_partitions(n):
    """All set partitions of 1..n as Clusterings (restricted growth order)."""
    out = []

    def grow(v, blocks):
        if v > n:
            out.append(Clustering(blocks))
            return
        for b in blocks:
            b.append(v)
            grow(v + 1, blocks)
            b.pop()
        blocks.append([v])
        grow(v + 1, blocks)
        blocks.pop()

    if n == 0:
        return []
    grow(1, [])
    return out


class FlatLattice(FinitePoset):
    """Lattice of flats of a graph; labels are Clusterings."""

    def __init__(self, graph, labels, covers):
        super().__init__(labels, covers, reduced=True)
        self.graph = graph

    def to_flats_json(self):
        return self.to_json(extra=lambda i, c: {"blocks": [list(b) for b in c.blocks]})


def flats(g):
    """Flats of the graphical matroid of ``g`` as clusterings ordered by refinement.

    Built by saturation from the discrete clustering: a flat is covered exactly
    by the clusterings obtained from merging two blocks joined by an edge.
    """
    start = Clustering.discrete(g.n) if g.n else None
    if start is None:
        return FlatLattice(g, [], [])
    seen = {start}
    frontier = [start]
    up = {}
    while frontier:
        nxt = []
        for c in frontier:
            ups = set()
            for u, v in g.edges:
                a, b = c.block_of(u), c.block_of(v)
                if a == b:
                    continue
                blocks = [blk for k, blk in enumerate(c.blocks) if k not in (a, b)]
                blocks.append(c.blocks[a] + c.blocks[b])
                d = Clustering(blocks)
                ups.add(d)
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
            up[c] = ups
        frontier = nxt
    labels = sorted(seen)
    index = {c: i for i, c in enumerate(labels)}
    covers = [(index[c], index[d]) for c in labels for d in up[c]]
    return FlatLattice(g, labels, covers)


def flat_closure(g, W):
    """Closure of an edge set in the graphical matroid, as the clustering of components."""
    return components(g, W)


def _element(L, x):
    if isinstance(x, Clustering):
        if x not in L.index:
            raise PosetError(f"{x} is not a flat of this lattice")
        return x
    return L.labels[x]


def join(L, a, b):
    a, b = _element(L, a), _element(L, b)
    n = a.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in (a, b):
        for blk in c.blocks:
            for v in blk[1:]:
                ra, rb = find(blk[0]), find(v)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    groups = {}
    for v in range(1, n + 1):
        groups.setdefault(find(v), []).append(v)
    merged = Clustering(groups.values())
    # a union of overlapping connected blocks is connected, so this is already closed
    return _element(L, merged)


def meet(L, a, b):
    a, b = _element(L, a), _element(L, b)
    g = L.graph
    blocks = []
    for x in a.blocks:
        for y in b.blocks:
            common = sorted(set(x) & set(y))
            if not common:
                continue
            sub = g.induced(common)
            for comp in components(sub, sub.edges).blocks:
                blocks.append([common[i - 1] for i in comp])
    return _element(L, Clustering(blocks))


# rational vector matroids

MAX_VECTORS = 12


def rational_rank(vectors):
    """Rank over Q by exact Gaussian elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    if not rows:
        return 0
    width = len(rows[0])
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                q = rows[r][col] / pr[col]
                rows[r] = [x - q * y for x, y in zip(rows[r], pr)]
        rank += 1
        if rank == len(rows):
            break
    return rank


class VectorMatroid:
    def __init__(self, vectors):
        self.vectors = [tuple(Fraction(x) for x in v) for v in vectors]
        dims = {len(v) for v in self.vectors}
        if len(dims) > 1:
            raise ValueError("vectors must share one dimension")

    def rank(self, subset):
        return rational_rank([self.vectors[i] for i in subset])

    def closure(self, subset):
        subset = tuple(sorted(subset))
        r = self.rank(subset)
        return tuple(i for i in range(len(self.vectors)) if i in subset or self.rank(subset + (i,)) == r)

    @classmethod
    def from_graph(cls, g):
        """Vectors ``e_u - e_v`` for the edges of ``g``, in edge order."""
        vecs = []
        for u, v in g.edges:
            x = [0] * g.n
            x[u - 1], x[v - 1] = 1, -1
            vecs.append(x)
        return cls(vecs)


def vector_flats(m):
    """Lattice of flats of a rational vector matroid, labels are index tuples."""
    k = len(m.vectors)
    if k > MAX_VECTORS:
        raise ValueError(f"vector_flats is limited to {MAX_VECTORS} vectors, got {k}")
    found = set()
    for r in range(k + 1):
        for subset in itertools.combinations(range(k), r):
            found.add(m.closure(subset))
    labels = sorted(found, key=lambda s: (m.rank(s), s))
    ranks = [m.rank(s) for s in labels]
    pairs = [
        (i, j)
        for i, s in enumerate(labels)
        for j, t in enumerate(labels)
        if ranks[i] < ranks[j] and set(s) <= set(t)
    ]
    return FinitePoset(labels, pairs, {"dim": ranks})
