"""Finite posets stored as transitively reduced cover relations.

Elements are addressed by dense integer ids; labels are arbitrary hashable
objects.  Order queries go through reachability bitsets (Python ints) that
are built lazily, so constructions that only need covers stay cheap.
"""

from __future__ import annotations

import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass


class PosetError(ValueError):
    pass


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Immutable finite poset.

    ``covers`` may contain redundant pairs; they are removed unless the
    caller promises the relation is already reduced (``reduced=True``).
    ``stats`` maps a statistic name to one integer per element.  The rank
    function is computed from the covers and is ``None`` for ungraded posets.
    """

    def __init__(self, labels, covers, stats=None, reduced=False):
        labels = list(labels)
        self.labels = labels
        self.n = len(labels)
        self.index = {}
        for i, lab in enumerate(labels):
            if lab in self.index:
                raise PosetError(f"duplicate label {lab!r}")
            self.index[lab] = i
        pairs = set()
        for a, b in covers:
            a, b = int(a), int(b)
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise PosetError(f"cover ({a},{b}) references a missing element")
            if a == b:
                raise PosetError(f"cycle detected at element {a}")
            pairs.add((a, b))
        lower = [[] for _ in range(self.n)]
        upper = [[] for _ in range(self.n)]
        for a, b in pairs:
            upper[a].append(b)
            lower[b].append(a)
        self._topo = self._toposort(lower, upper)
        self._down = None
        self._up = None
        if not reduced:
            lower, upper, pairs = self._reduce(lower, upper)
        for lst in lower:
            lst.sort()
        for lst in upper:
            lst.sort()
        self.lower = lower
        self.upper = upper
        self.covers = sorted(pairs)
        self.rank = self._compute_rank()
        self.stats = {}
        for name, values in (stats or {}).items():
            values = list(values)
            if len(values) != self.n:
                raise PosetError(f"statistic {name!r} has {len(values)} values for {self.n} elements")
            self.stats[name] = values

    @classmethod
    def from_covers(cls, labels, covers, stats=None):
        return cls(labels, covers, stats)

    # construction helpers

    def _toposort(self, lower, upper):
        indeg = [len(x) for x in lower]
        order = [i for i in range(self.n) if indeg[i] == 0]
        head = 0
        while head < len(order):
            a = order[head]
            head += 1
            for b in upper[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
        if len(order) != self.n:
            raise PosetError("cycle detected in cover relation")
        return order

    def _reduce(self, lower, upper):
        down = self._reach(lower)
        pairs = set()
        new_lower = [[] for _ in range(self.n)]
        new_upper = [[] for _ in range(self.n)]
        for b in range(self.n):
            below = 0
            for a in lower[b]:
                below |= down[a] & ~(1 << a)
            for a in lower[b]:
                if not (below >> a) & 1:
                    pairs.add((a, b))
                    new_lower[b].append(a)
                    new_upper[a].append(b)
        return new_lower, new_upper, pairs

    def _reach(self, lower):
        down = [0] * self.n
        for b in self._topo:
            m = 1 << b
            for a in lower[b]:
                m |= down[a]
            down[b] = m
        return down

    def _compute_rank(self):
        rank = [0] * self.n
        for b in self._topo:
            if self.lower[b]:
                rank[b] = 1 + max(rank[a] for a in self.lower[b])
        for a, b in self.covers:
            if rank[b] != rank[a] + 1:
                return None
        return rank

    # order queries

    @property
    def down(self):
        """``down[i]``: bitset of all elements ``<= i``."""
        if self._down is None:
            self._down = self._reach(self.lower)
        return self._down

    @property
    def up(self):
        """``up[i]``: bitset of all elements ``>= i``."""
        if self._up is None:
            up = [0] * self.n
            for a in reversed(self._topo):
                m = 1 << a
                for b in self.upper[a]:
                    m |= up[b]
                up[a] = m
            self._up = up
        return self._up

    def leq(self, a, b):
        return bool((self.down[b] >> a) & 1)

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"<FinitePoset n={self.n} covers={len(self.covers)} graded={self.is_graded}>"

    @property
    def is_graded(self):
        return self.rank is not None

    def stat(self, name):
        if name == "rank":
            if self.rank is None:
                raise PosetError("poset is not graded")
            return self.rank
        if name not in self.stats:
            raise PosetError(f"unknown statistic {name!r}")
        return self.stats[name]

    def profile(self, name="rank"):
        """Element counts per value of a statistic, from 0 to the maximum."""
        values = self.stat(name)
        if not values:
            return ()
        counts = Counter(values)
        return tuple(counts.get(v, 0) for v in range(max(values) + 1))

    def minimal(self):
        return [i for i in range(self.n) if not self.lower[i]]

    def maximal(self):
        return [i for i in range(self.n) if not self.upper[i]]

    def top(self):
        """Index of the greatest element, or None."""
        mx = self.maximal()
        if len(mx) == 1 and self.down[mx[0]] == (1 << self.n) - 1:
            return mx[0]
        return None

    def bottom(self):
        mn = self.minimal()
        if len(mn) == 1 and self.up[mn[0]] == (1 << self.n) - 1:
            return mn[0]
        return None

    def topological_order(self):
        return list(self._topo)

    def upper_ideal(self, i):
        return sorted(_bits(self.up[i]))

    def lower_ideal(self, i):
        return sorted(_bits(self.down[i]))

    def comparable_pairs(self):
        """Number of pairs ``a < b``."""
        return sum(bin(m).count("1") - 1 for m in self.down)

    # derived posets

    def induced(self, keep):
        """Induced subposet on the given element ids (kept in increasing id order)."""
        keep = sorted(set(keep))
        pos = {old: new for new, old in enumerate(keep)}
        mask = 0
        for old in keep:
            mask |= 1 << old
        down = self.down
        pairs = []
        for old in keep:
            below = down[old] & mask & ~(1 << old)
            for a in _bits(below):
                pairs.append((pos[a], pos[old]))
        stats = {k: [v[i] for i in keep] for k, v in self.stats.items()}
        sub = FinitePoset([self.labels[i] for i in keep], pairs, stats)
        return sub

    def without(self, drop):
        drop = set(drop)
        return self.induced(i for i in range(self.n) if i not in drop)

    def relabel(self, labels):
        return FinitePoset(labels, self.covers, self.stats, reduced=True)

    # serialisation

    def to_json(self, extra=None):
        elements = []
        for i, lab in enumerate(self.labels):
            el = {"id": i, "label": str(lab), "rank": None if self.rank is None else self.rank[i]}
            for name, values in self.stats.items():
                el[name] = values[i]
            if extra is not None:
                el.update(extra(i, lab))
            elements.append(el)
        return {"elements": elements, "covers": [list(c) for c in self.covers]}

    def dumps(self, extra=None):
        return json.dumps(self.to_json(extra), separators=(",", ":"))

    @classmethod
    def from_json(cls, data):
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        elements = sorted(data["elements"], key=lambda e: e["id"])
        if [e["id"] for e in elements] != list(range(len(elements))):
            raise PosetError("element ids must be dense from 0")
        labels = [e["label"] for e in elements]
        stat_names = sorted(
            {k for e in elements for k, v in e.items()
             if k not in ("id", "label", "rank") and isinstance(v, int) and not isinstance(v, bool)}
        )
        stats = {k: [e[k] for e in elements] for k in stat_names if all(k in e for e in elements)}
        return cls(labels, [tuple(c) for c in data["covers"]], stats)

    def to_dot(self, name="P"):
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            text = str(lab).replace('"', '\\"')
            lines.append(f'  n{i} [label="{text}"];')
        if self.rank is not None:
            layers = {}
            for i, r in enumerate(self.rank):
                layers.setdefault(r, []).append(i)
            for r in sorted(layers):
                members = " ".join(f"n{i};" for i in layers[r])
                lines.append(f"  {{ rank=same; {members} }}")
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def from_covers(labels, covers, stats=None):
    return FinitePoset(labels, covers, stats)


def chain(k):
    """Chain ``0 < 1 < ... < k-1``."""
    return FinitePoset(list(range(k)), [(i, i + 1) for i in range(k - 1)])


def antichain(k):
    return FinitePoset(list(range(k)), [])


def boolean_lattice(items):
    """Subsets of ``items`` ordered by inclusion, labels are sorted tuples."""
    items = list(items)
    subsets = [
        tuple(c)
        for r in range(len(items) + 1)
        for c in itertools.combinations(items, r)
    ]
    index = {s: i for i, s in enumerate(subsets)}
    covers = []
    for s in subsets:
        rest = [x for x in items if x not in s]
        for x in rest:
            t = tuple(y for y in items if y in s or y == x)
            covers.append((index[s], index[t]))
    return FinitePoset(subsets, covers, reduced=True)


# skeleta, beats, cores


def skeleton(P, stat, j):
    """Induced subposet on elements whose statistic is at most ``j``."""
    values = P.stat(stat)
    return P.induced(i for i in range(P.n) if values[i] <= j)


def beats(P):
    """``(upbeats, downbeats)``: elements with exactly one upper / lower cover."""
    up = {i for i in range(P.n) if len(P.upper[i]) == 1}
    down = {i for i in range(P.n) if len(P.lower[i]) == 1}
    return up, down


@dataclass(frozen=True)
class Removal:
    element: int
    label: object
    kind: str  # "up" or "down"


def core(P, rng=None):
    """Remove beats one at a time until none are left.

    Deterministic order: upbeats before downbeats, lowest id first.  With
    ``rng`` (a ``random.Random`` or an int seed) a uniformly random beat is
    removed at each step instead.  Returns ``(core_poset, trace)``; trace
    entries refer to ids of ``P``.
    """
    if rng is not None and not isinstance(rng, random.Random):
        rng = random.Random(rng)
    down = P.down
    lower = [set(x) for x in P.lower]
    upper = [set(x) for x in P.upper]
    alive = set(range(P.n))
    up_beats = {i for i in alive if len(upper[i]) == 1}
    down_beats = {i for i in alive if len(lower[i]) == 1}
    trace = []
    while up_beats or down_beats:
        if rng is None:
            if up_beats:
                x, kind = min(up_beats), "up"
            else:
                x, kind = min(down_beats), "down"
        else:
            options = [(i, "up") for i in sorted(up_beats)] + [(i, "down") for i in sorted(down_beats)]
            x, kind = rng.choice(options)
        trace.append(Removal(x, P.labels[x], kind))
        touched = set(lower[x]) | set(upper[x])
        for a in lower[x]:
            upper[a].discard(x)
        for b in upper[x]:
            lower[b].discard(x)
        for a in lower[x]:
            for b in upper[x]:
                # (a, b) becomes a cover unless another path a < z < b survives
                if not any(z != b and (down[b] >> z) & 1 for z in upper[a]):
                    upper[a].add(b)
                    lower[b].add(a)
        alive.discard(x)
        lower[x] = set()
        upper[x] = set()
        up_beats.discard(x)
        down_beats.discard(x)
        for y in touched:
            (up_beats.add if len(upper[y]) == 1 else up_beats.discard)(y)
            (down_beats.add if len(lower[y]) == 1 else down_beats.discard)(y)
    return P.induced(alive), trace


# monotone maps, Galois connections, closures


@dataclass(frozen=True)
class MonotoneMap:
    source: FinitePoset
    target: FinitePoset
    image: tuple

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if len(image) != self.source.n:
            raise PosetError("image table length does not match the source poset")
        if any(not (0 <= x < self.target.n) for x in image):
            raise PosetError("image table points outside the target poset")
        object.__setattr__(self, "image", image)

    def __call__(self, i):
        return self.image[i]

    def is_monotone(self):
        f = self.image
        return all(self.target.leq(f[a], f[b]) for a, b in self.source.covers)

    def compose(self, other):
        """``self`` after ``other``."""
        if other.target is not self.source:
            raise PosetError("maps are not composable")
        return MonotoneMap(other.source, self.target, [self.image[x] for x in other.image])


def is_galois(f, g):
    """Whether ``f: S -> T`` is left adjoint to ``g: T -> S``.

    Checks ``f(s) <= t  <=>  s <= g(t)`` for every pair, and independently the
    unit/counit form ``s <= g(f(s))``, ``f(g(t)) <= t`` plus monotonicity.
    For monotone maps both criteria must agree.
    """
    S, T = f.source, f.target
    if g.source is not T or g.target is not S:
        raise PosetError("domain/codomain mismatch between f and g")
    mono = f.is_monotone() and g.is_monotone()
    pairwise = all(
        T.leq(f.image[s], t) == S.leq(s, g.image[t])
        for s in range(S.n)
        for t in range(T.n)
    )
    unit_counit = mono and all(S.leq(s, g.image[f.image[s]]) for s in range(S.n)) and all(
        T.leq(f.image[g.image[t]], t) for t in range(T.n)
    )
    if mono and pairwise != unit_counit:
        raise AssertionError("Galois criteria disagree on monotone maps")
    return mono and pairwise


def is_closure(c):
    """Extensive, monotone and idempotent endomap."""
    P = c.source
    if c.target is not P:
        raise PosetError("closure must be an endomap")
    im = c.image
    return (
        all(P.leq(s, im[s]) for s in range(P.n))
        and c.is_monotone()
        and all(im[im[s]] == im[s] for s in range(P.n))
    )


# products and isomorphism


def direct_product(P, Q):
    """Componentwise order on pairs; labels are ``(p_label, q_label)``."""
    labels = [(a, b) for a in P.labels for b in Q.labels]
    m = Q.n

    def idx(i, j):
        return i * m + j

    covers = []
    for i in range(P.n):
        for j in range(Q.n):
            for j2 in Q.upper[j]:
                covers.append((idx(i, j), idx(i, j2)))
            for i2 in P.upper[i]:
                covers.append((idx(i, j), idx(i2, j)))
    stats = {}
    for name in set(P.stats) & set(Q.stats):
        stats[name] = [P.stats[name][i] + Q.stats[name][j] for i in range(P.n) for j in range(Q.n)]
    return FinitePoset(labels, covers, stats, reduced=True)


MAX_ISO_SIZE = 5000


def _refine(Ps, colors):
    """Jointly refine colourings of several posets until stable."""
    while True:
        sigs = []
        for P, col in zip(Ps, colors):
            sigs.append([
                (col[i], tuple(sorted(col[a] for a in P.lower[i])), tuple(sorted(col[b] for b in P.upper[i])))
                for i in range(P.n)
            ])
        table = {s: k for k, s in enumerate(sorted({s for ss in sigs for s in ss}))}
        new = [[table[s] for s in ss] for ss in sigs]
        if all(len(set(a)) == len(set(b)) for a, b in zip(colors, new)):
            return new
        colors = new


def are_isomorphic(P, Q, stats=()):
    """An order isomorphism ``P -> Q`` as a list of target ids, or None.

    Exact backtracking search over colour-refined candidates.  Statistics
    named in ``stats`` must be preserved as well.
    """
    if max(P.n, Q.n) > MAX_ISO_SIZE:
        raise PosetError(f"isomorphism search limited to {MAX_ISO_SIZE} elements")
    if P.n != Q.n or len(P.covers) != len(Q.covers):
        return None
    if P.n == 0:
        return []

    def initial(R):
        return [
            (tuple(R.stat(s)[i] for s in stats), len(R.lower[i]), len(R.upper[i]))
            for i in range(R.n)
        ]

    ip, iq = initial(P), initial(Q)
    table = {s: k for k, s in enumerate(sorted(set(ip) | set(iq)))}
    colors = _refine([P, Q], [[table[s] for s in ip], [table[s] for s in iq]])
    upper_q = [set(x) for x in Q.upper]

    def search(cp, cq):
        if Counter(cp) != Counter(cq):
            return None
        cells = {}
        for i, c in enumerate(cp):
            cells.setdefault(c, []).append(i)
        if all(len(v) == 1 for v in cells.values()):
            where = {c: i for i, c in enumerate(cq)}
            phi = [where[c] for c in cp]
            for a, b in P.covers:
                if phi[b] not in upper_q[phi[a]]:
                    return None
            return phi
        c = min((c for c, v in cells.items() if len(v) > 1), key=lambda c: (len(cells[c]), c))
        p = cells[c][0]
        fresh = max(max(cp), max(cq)) + 1
        for q in (i for i, x in enumerate(cq) if x == c):
            np_, nq = list(cp), list(cq)
            np_[p] = fresh
            nq[q] = fresh
            rp, rq = _refine([P, Q], [np_, nq])
            found = search(rp, rq)
            if found is not None:
                return found
        return None

    return search(*colors)


# order complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces grouped by dimension; each face is a tuple of vertex ids."""

    n_vertices: int
    faces: tuple

    @property
    def dimension(self):
        return len(self.faces) - 1

    def f_vector(self):
        return tuple(len(f) for f in self.faces)

    def all_faces(self):
        return [s for level in self.faces for s in level]

    def facets(self):
        top = set()
        faces = set(self.all_faces())
        for s in faces:
            if not any(len(t) == len(s) + 1 and set(s) <= set(t) for t in faces):
                top.add(s)
        return sorted(top, key=lambda s: (len(s), s))


def order_complex(P):
    """All chains of ``P``.  Vertices of a face are listed bottom to top."""
    pos = {e: k for k, e in enumerate(P.topological_order())}
    order = P.topological_order()
    up = P.up
    by_dim = []

    def extend(ch, last):
        d = len(ch) - 1
        if d == len(by_dim):
            by_dim.append([])
        by_dim[d].append(tuple(ch))
        above = up[last] & ~(1 << last)
        for b in sorted(_bits(above), key=pos.__getitem__):
            ch.append(b)
            extend(ch, b)
            ch.pop()

    for a in order:
        extend([a], a)
    faces = tuple(tuple(sorted(level)) for level in by_dim)
    return SimplicialComplex(P.n, faces)
