"""Symmetric identification posets: cluster-permutohedra, graphicahedra and
face posets of (inflated) partial flag varieties.

An element is a base element ``m`` together with an orbit of the Young
subgroup of its clustering.  Orbits are stored as contingency tables: rows
are the blocks of the clustering (canonical order), columns are boxes, and
entry ``t[V][i]`` counts the labels of box ``i`` that land in block ``V``.
With unit boxes a table is just an assignment of label sets to blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .flats import Clustering, flats
from .graph import Graph, complete_graph, components, inflate
from .limits import check_n
from .poset import FinitePoset, PosetError, boolean_lattice, direct_product


class StructureError(RuntimeError):
    """A constructed poset violates a structural property it must have."""


def _compositions(total, caps):
    """Vectors ``x <= caps`` summing to ``total``, lexicographically increasing."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest = sum(caps[1:])
    for first in range(max(0, total - rest), min(total, caps[0]) + 1):
        for tail in _compositions(total - first, caps[1:]):
            yield (first,) + tail


def orbit_tables(C, boxes):
    """Nonnegative integer matrices with row sums the block sizes of ``C`` and
    column sums ``boxes``, in lexicographic order."""
    sizes = [len(b) for b in C.blocks]
    boxes = tuple(int(k) for k in boxes)
    if sum(sizes) != sum(boxes):
        raise ValueError(f"margins do not match: blocks sum to {sum(sizes)}, boxes to {sum(boxes)}")
    out = []

    def rows(i, caps, acc):
        if i == len(sizes):
            out.append(tuple(acc))
            return
        for row in _compositions(sizes[i], caps):
            acc.append(row)
            rows(i + 1, tuple(c - x for c, x in zip(caps, row)), acc)
            acc.pop()

    rows(0, boxes, [])
    return out


def aggregate(table, finer, coarser):
    """Sum the rows of ``table`` (indexed by blocks of ``finer``) along the
    block merge ``finer -> coarser``."""
    width = len(table[0]) if table else 0
    acc = [[0] * width for _ in coarser.blocks]
    for row, k in zip(table, finer.merge_map(coarser)):
        target = acc[k]
        for i, x in enumerate(row):
            target[i] += x
    return tuple(tuple(r) for r in acc)


def _fmt_table(table):
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in table) + "]"


@dataclass(frozen=True)
class IdentElement:
    base: object
    clustering: Clustering
    table: tuple

    def __str__(self):
        head = ""
        if not isinstance(self.base, Clustering):
            head = "W={" + ",".join(f"{u}-{v}" for u, v in self.base) + "} "
        return f"{head}C={self.clustering} t={_fmt_table(self.table)}"

    def assignment(self):
        """Label set per block (unit boxes only)."""
        return [tuple(i + 1 for i, x in enumerate(row) if x) for row in self.table]


class IdentPoset(FinitePoset):
    """Identification poset with its provenance.

    ``kind`` is one of ``cl``, ``gr``, ``flag`` (raw) or ``flag-reduced``.
    """

    def __init__(self, labels, covers, stats, *, kind, graph, boxes, base_graph=None, reduced=True):
        super().__init__(labels, covers, stats, reduced=reduced)
        self.kind = kind
        self.graph = graph
        self.boxes = tuple(boxes)
        self.base_graph = base_graph if base_graph is not None else graph

    def induced(self, keep):
        sub = super().induced(keep)
        return IdentPoset(sub.labels, sub.covers, sub.stats, kind=self.kind, graph=self.graph,
                          boxes=self.boxes, base_graph=self.base_graph)


def identification_poset(base, clustering_of, boxes, **meta):
    """Pairs ``(m, table)`` with ``(m', t') <= (m, t)`` iff ``m' <= m`` and
    aggregating ``t'`` along the block merge gives ``t``.

    ``clustering_of`` maps a base label to its clustering and must be monotone.
    Covers come from base covers, so no reduction pass is needed.
    """
    clus = [clustering_of(lab) for lab in base.labels]
    tables = {}
    labels = []
    first = []
    for m, lab in enumerate(base.labels):
        c = clus[m]
        if c not in tables:
            tables[c] = orbit_tables(c, boxes)
        first.append(len(labels))
        labels.extend(IdentElement(lab, c, t) for t in tables[c])
    index = {}
    for m in range(base.n):
        for k, t in enumerate(tables[clus[m]]):
            index[(m, t)] = first[m] + k
    covers = []
    for lo, hi in base.covers:
        c_lo, c_hi = clus[lo], clus[hi]
        if not c_lo.refines(c_hi):
            raise ValueError(f"clustering map is not monotone: {c_lo} does not refine {c_hi}")
        for k, t in enumerate(tables[c_lo]):
            covers.append((first[lo] + k, index[(hi, aggregate(t, c_lo, c_hi))]))
    stats = meta.pop("stats", None) or {}
    stats = {name: [fn(e) for e in labels] for name, fn in stats.items()}
    meta.setdefault("kind", "ident")
    meta.setdefault("graph", None)
    return IdentPoset(labels, covers, stats, boxes=boxes, **meta)


def _require_connected(g, what):
    if g.n > 0 and not g.is_connected():
        raise ValueError(f"{what} requires a connected graph")


def cluster_permutohedron(g, force_large=False):
    check_n(g.n, "cluster_permutohedron", force_large)
    _require_connected(g, "cluster_permutohedron")
    return identification_poset(flats(g), lambda c: c, (1,) * g.n, kind="cl", graph=g)


def graphicahedron(g, force_large=False):
    """Graphicahedron over all edge subsets; statistics ``size`` (= rank) and ``conn``."""
    check_n(g.n, "graphicahedron", force_large)
    _require_connected(g, "graphicahedron")
    base = boolean_lattice(g.edges)
    comp = {W: components(g, W) for W in base.labels}
    return identification_poset(
        base, comp.__getitem__, (1,) * g.n, kind="gr", graph=g,
        stats={"conn": lambda e: e.clustering.rank},
    )


def inflated_flag_poset(g, boxes, reduced=False, force_large=False):
    """Identification poset over the flats of the inflation of ``g`` with the
    given box sizes.

    With ``reduced=True`` the face poset in reduced normal form is returned
    instead: all clusterings of ``1..n`` whose non-singleton blocks spread
    over at least two boxes forming a connected subgraph of ``g``, with
    tables.  It contains ``reduce(e)`` of every raw element whose blocks are
    admissible, and its upper ideal at each fixed point is the lattice of
    flats of the inflated graph relabelled by that fixed point.
    """
    boxes = tuple(int(k) for k in boxes)
    n = sum(boxes)
    check_n(n, "inflated_flag_poset", force_large)
    _require_connected(g, "inflated_flag_poset")
    G, part = inflate(g, boxes)
    if not reduced:
        P = identification_poset(flats(G), lambda c: c, boxes, kind="flag", graph=G, base_graph=g)
        P.part = part
        return P
    full = identification_poset(flats(complete_graph(n)), lambda c: c, boxes,
                                kind="flag-reduced", graph=G, base_graph=g)
    keep = [i for i, e in enumerate(full.labels) if _admissible(e, g)]
    P = full.induced(keep)
    if not P.is_graded:
        raise StructureError("reduced flag poset is not graded")
    P.part = part
    return P


def partial_flag_poset(boxes, reduced=False, force_large=False):
    boxes = tuple(int(k) for k in boxes)
    if len(boxes) < 2:
        raise ValueError("partial_flag_poset needs at least two boxes")
    return inflated_flag_poset(complete_graph(len(boxes)), boxes, reduced, force_large)


def _admissible(e, g):
    edges = set(g.edges)
    for block, row in zip(e.clustering.blocks, e.table):
        if len(block) == 1:
            continue
        support = [i + 1 for i, x in enumerate(row) if x]
        if len(support) < 2:
            return False
        sub = Graph(len(support), [
            (a + 1, b + 1)
            for a in range(len(support))
            for b in range(a + 1, len(support))
            if (support[a], support[b]) in edges
        ])
        if not sub.is_connected():
            return False
    return True


def reduce(e):
    """Split every non-singleton block whose row sits in a single box into
    singletons of that box.  Idempotent."""
    blocks = []
    rows = []
    changed = False
    for block, row in zip(e.clustering.blocks, e.table):
        support = [i for i, x in enumerate(row) if x]
        if len(block) > 1 and len(support) == 1:
            changed = True
            unit = tuple(1 if i == support[0] else 0 for i in range(len(row)))
            for v in block:
                blocks.append((v,))
                rows.append(unit)
        else:
            blocks.append(block)
            rows.append(row)
    if not changed:
        return e
    order = sorted(range(len(blocks)), key=lambda k: blocks[k])
    c = Clustering(blocks[k] for k in order)
    table = tuple(rows[k] for k in order)
    base = c if isinstance(e.base, Clustering) else e.base
    return IdentElement(base, c, table)


def reduce_image(P):
    """Ids (in ``P``) of the distinct values of ``reduce`` on a raw poset."""
    return sorted({P.index[reduce(e)] for e in P.labels})


def permutation_of(e):
    """One-line permutation of a minimal element with unit boxes: vertex -> label."""
    if any(len(b) != 1 for b in e.clustering.blocks):
        raise ValueError("not a minimal element")
    return tuple(row.index(1) + 1 for row in e.table)


def one_skeleton(P):
    """Graph on minimal elements with one edge per rank-1 element.

    Returns ``(graph, vertex_labels, weights)``; ``weights`` maps an edge to
    the pair of vertices exchanged along it (the 2-block of the rank-1 element).
    """
    if not P.is_graded:
        raise StructureError("one_skeleton needs a graded poset")
    mins = [i for i in range(P.n) if P.rank[i] == 0]
    pos = {m: k for k, m in enumerate(mins, 1)}
    edges = []
    weights = {}
    for i in range(P.n):
        if P.rank[i] != 1:
            continue
        below = P.lower[i]
        if len(below) != 2:
            raise StructureError(f"rank-1 element {P.labels[i]} covers {len(below)} minimal elements")
        a, b = sorted(pos[x] for x in below)
        pair = next(blk for blk in P.labels[i].clustering.blocks if len(blk) > 1)
        if (a, b) in weights:
            raise StructureError(f"two rank-1 elements join the same pair of minimal elements {a},{b}")
        weights[(a, b)] = pair
        edges.append((a, b))
    return Graph(len(mins), edges), [P.labels[m] for m in mins], weights


def coset_count(C):
    """``n! / prod |V|!`` for a clustering."""
    return math.factorial(C.n) // math.prod(math.factorial(len(b)) for b in C.blocks)


class FactorizationError(StructureError):
    pass


def _flat_product(posets):
    result = posets[0].relabel([(x,) for x in posets[0].labels])
    for Q in posets[1:]:
        prod = direct_product(result, Q)
        result = prod.relabel([a + (b,) for a, b in prod.labels])
    return result


def lower_ideal_factorization(P, s):
    """Product of cluster-permutohedra of the blocks of ``s`` and an explicit
    order isomorphism onto the lower ideal of ``s``.

    Returns ``(product, phi)`` with ``phi[k]`` the id in ``P`` of product
    element ``k``.  Raises FactorizationError if the map is not an isomorphism.
    """
    if getattr(P, "kind", None) != "cl":
        raise ValueError("lower_ideal_factorization expects a cluster-permutohedron")
    if isinstance(s, IdentElement):
        s = P.index[s]
    top = P.labels[s]
    g = P.graph
    parts = []
    factors = []
    for block, labels in zip(top.clustering.blocks, top.assignment()):
        factors.append(cluster_permutohedron(g.induced(block), force_large=True))
        parts.append((block, labels))
    prod = _flat_product(factors)
    phi = []
    for combo in prod.labels:
        blocks = []
        rows = []
        for (block, labs), e in zip(parts, combo):
            for sub, row in zip(e.clustering.blocks, e.table):
                blocks.append(tuple(block[v - 1] for v in sub))
                full = [0] * g.n
                for c, x in enumerate(row):
                    if x:
                        full[labs[c] - 1] = x
                rows.append(tuple(full))
        order = sorted(range(len(blocks)), key=lambda k: blocks[k])
        c = Clustering(blocks[k] for k in order)
        el = IdentElement(c, c, tuple(rows[k] for k in order))
        if el not in P.index:
            raise FactorizationError(f"{el} is not an element of the poset")
        phi.append(P.index[el])
    ideal = set(P.lower_ideal(s))
    if len(set(phi)) != len(phi) or set(phi) != ideal:
        raise FactorizationError("product does not map bijectively onto the lower ideal")
    image_covers = {(phi[a], phi[b]) for a, b in prod.covers}
    ideal_covers = {(a, b) for a, b in P.covers if a in ideal and b in ideal}
    if image_covers != ideal_covers:
        raise FactorizationError("product covers do not match the covers of the lower ideal")
    return prod, phi
