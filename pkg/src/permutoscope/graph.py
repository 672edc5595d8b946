"""Simple graphs on vertices 1..n, named families, and Cayley graphs of S_n."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .limits import check_n


class GraphSpecError(ValueError):
    pass


class _Infinite:
    """Girth of a forest.  Compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("permutoscope.INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = _Infinite()


def _canonical_edges(n, edges):
    out = set()
    for e in edges:
        u, v = e
        u, v = int(u), int(v)
        if u == v:
            raise GraphSpecError(f"loop at vertex {u}")
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphSpecError(f"edge {{{u},{v}}} has an endpoint outside 1..{n}")
        out.add((min(u, v), max(u, v)))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..n`` with a sorted edge tuple."""

    n: int
    edges: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphSpecError("vertex count must be nonnegative")
        object.__setattr__(self, "edges", _canonical_edges(self.n, self.edges))

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def adjacency(self):
        adj = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in set(self.edges)

    def degree(self, v):
        return sum(v in e for e in self.edges)

    def induced(self, vertices):
        """Induced subgraph relabelled onto 1..k in increasing vertex order."""
        vs = sorted(vertices)
        pos = {v: i + 1 for i, v in enumerate(vs)}
        es = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vs), es)

    def is_connected(self):
        return len(components(self, self.edges).blocks) <= 1

    def to_dot(self, labels=None, weights=None):
        lines = [f'graph "{self.name or "G"}" {{']
        for v in self.vertices:
            lab = labels[v - 1] if labels is not None else v
            lines.append(f'  {v} [label="{lab}"];')
        for e in self.edges:
            attr = ""
            if weights is not None and e in weights:
                attr = f' [label="{weights[e]}"]'
            lines.append(f"  {e[0]} -- {e[1]}{attr};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self, labels=None):
        out = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.name:
            out["name"] = self.name
        if labels is not None:
            out["labels"] = [str(x) for x in labels]
        return out


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(1, n)], name=f"path:{n}")


def cycle_graph(n):
    if n < 3:
        raise GraphSpecError("cycle:n requires n >= 3")
    es = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n, es, name=f"cycle:{n}")


def star_graph(k):
    return Graph(k + 1, [(1, i) for i in range(2, k + 2)], name=f"star:{k}")


def complete_graph(n):
    return Graph(n, itertools.combinations(range(1, n + 1), 2), name=f"complete:{n}")


def multipartite_graph(parts):
    parts = list(parts)
    if any(k < 1 for k in parts):
        raise GraphSpecError("multipartite part sizes must be >= 1")
    g, _ = inflate(complete_graph(len(parts)), parts)
    return Graph(g.n, g.edges, name="multipartite:" + ",".join(map(str, parts)))


def read_edge_file(path):
    edges = []
    n = 0
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphSpecError(f"{path}:{lineno}: expected two vertices, got {raw!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphSpecError(f"{path}:{lineno}: non-integer vertex in {raw!r}") from None
        if u < 1 or v < 1:
            raise GraphSpecError(f"{path}:{lineno}: vertices must be positive integers")
        if u == v:
            raise GraphSpecError(f"{path}:{lineno}: loop at vertex {u}")
        edges.append((u, v))
        n = max(n, u, v)
    return Graph(n, edges, name=f"file:{path}")


def _int_param(text, spec):
    try:
        value = int(text)
    except ValueError:
        raise GraphSpecError(f"malformed graph spec {spec!r}") from None
    if value < 1:
        raise GraphSpecError(f"family parameter must be >= 1 in {spec!r}")
    return value


def parse_graph(spec):
    """Parse ``path:n``, ``cycle:n``, ``star:k``, ``complete:n``,
    ``multipartite:k1,...,ks`` or ``file:PATH``."""
    if not isinstance(spec, str) or ":" not in spec:
        raise GraphSpecError(f"malformed graph spec {spec!r}")
    family, _, arg = spec.partition(":")
    family = family.strip().lower()
    arg = arg.strip()
    if family == "file":
        if not arg:
            raise GraphSpecError("file: spec needs a path")
        return read_edge_file(arg)
    if family == "multipartite":
        parts = [_int_param(p.strip(), spec) for p in arg.split(",") if p.strip()]
        if not parts:
            raise GraphSpecError(f"malformed graph spec {spec!r}")
        return multipartite_graph(parts)
    builders = {
        "path": path_graph,
        "cycle": cycle_graph,
        "star": star_graph,
        "complete": complete_graph,
    }
    if family not in builders:
        raise GraphSpecError(f"unknown graph family {family!r}")
    return builders[family](_int_param(arg, spec))


def components(g, active_edges):
    """Partition of ``1..n`` into vertex sets of components of ``([n], active_edges)``."""
    from .flats import Clustering

    edge_set = set(g.edges)
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in active_edges:
        u, v = min(e), max(e)
        if (u, v) not in edge_set:
            raise ValueError(f"edge {{{u},{v}}} is not an edge of the graph")
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return Clustering(groups.values())


def girth(g):
    """Length of a shortest cycle, or ``INFINITE`` for a forest."""
    adj = g.adjacency()
    best = None
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return INFINITE if best is None else best


def permutations(n):
    """All permutations of 1..n in lexicographic one-line order."""
    return list(itertools.permutations(range(1, n + 1)))


def cayley_graph(g, force_large=False):
    """Cayley graph of S_n generated by the transpositions ``(i j)``, ``{i,j}`` in E.

    Returns ``(graph, perms)`` where vertex ``k`` of ``graph`` is ``perms[k-1]``.
    Adjacency is right multiplication: swapping the entries in positions i and j.
    """
    check_n(g.n, "cayley_graph", force_large)
    perms = permutations(g.n)
    index = {p: k for k, p in enumerate(perms, 1)}
    edges = []
    for p in perms:
        for i, j in g.edges:
            q = list(p)
            q[i - 1], q[j - 1] = q[j - 1], q[i - 1]
            a, b = index[p], index[tuple(q)]
            if a < b:
                edges.append((a, b))
    name = f"cayley({g.name})" if g.name else "cayley"
    return Graph(len(perms), edges, name=name), perms


def inflate(g, boxes):
    """Replace vertex i of ``g`` by ``boxes[i-1]`` independent copies.

    Returns ``(inflated, part)`` where ``part[v-1]`` is the vertex of ``g``
    that vertex ``v`` of the inflation copies.  Copies occupy contiguous ranges.
    """
    boxes = [int(k) for k in boxes]
    if len(boxes) != g.n:
        raise ValueError(f"expected {g.n} box sizes, got {len(boxes)}")
    if any(k < 1 for k in boxes):
        raise ValueError("box sizes must be >= 1")
    part = [i for i, k in enumerate(boxes, 1) for _ in range(k)]
    members = {}
    for v, p in enumerate(part, 1):
        members.setdefault(p, []).append(v)
    edges = [
        (v, w)
        for a, b in g.edges
        for v in members[a]
        for w in members[b]
    ]
    name = f"{g.name}({','.join(map(str, boxes))})" if g.name else ""
    return Graph(len(part), edges, name=name), tuple(part)


def weights_independent(g, j):
    """Whether every set of at most ``j`` weights ``e_u - e_v`` (one per edge)
    is linearly independent.

    A set of such vectors is dependent exactly when its edges contain a cycle,
    so the smallest dependent set is a shortest cycle.
    """
    if j < 0:
        raise ValueError("j must be nonnegative")
    return j < girth(g)


def face_poset(g):
    """Vertices (rank 0) and edges (rank 1) of ``g`` ordered by incidence."""
    from .poset import FinitePoset

    labels = [("v", v) for v in g.vertices] + [("e", e) for e in g.edges]
    covers = [(u - 1, g.n + k) for k, e in enumerate(g.edges) for u in e]
    return FinitePoset(labels, covers, reduced=True)


def graph_isomorphism(g, h):
    """A vertex bijection ``g -> h`` (list indexed by vertex-1) preserving edges, or None."""
    from .poset import are_isomorphic

    if g.n != h.n or len(g.edges) != len(h.edges):
        return None
    phi = are_isomorphic(face_poset(g), face_poset(h), stats=("rank",))
    if phi is None:
        return None
    return [phi[v - 1] + 1 for v in g.vertices]
