"""Independent brute-force oracles shared by the tests.

None of these reuse the package's construction code paths: they enumerate
permutations, partitions and subsets directly.
"""

import itertools
import math
from fractions import Fraction

import networkx as nx


def nx_graph(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


def partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in partitions(rest):
        for k in range(len(p)):
            yield p[:k] + [[first] + p[k]] + p[k + 1:]
        yield [[first]] + p


def connected_in(edges, block):
    block = set(block)
    h = nx.Graph()
    h.add_nodes_from(block)
    h.add_edges_from((u, v) for u, v in edges if u in block and v in block)
    return nx.is_connected(h)


def brute_flats(g):
    """Partitions of the vertex set whose blocks induce connected subgraphs."""
    out = []
    for p in partitions(g.vertices):
        if all(connected_in(g.edges, b) for b in p):
            out.append(frozenset(frozenset(b) for b in p))
    return out


def coset_profile(g):
    """Elements of the cluster-permutohedron by rank, counted as distinct
    orbits of all permutations under each flat's Young subgroup."""
    n = g.n
    profile = [0] * n
    perms = list(itertools.permutations(range(1, n + 1)))
    for flat in brute_flats(g):
        blocks = sorted(sorted(b) for b in flat)
        orbits = {tuple(frozenset(p[v - 1] for v in b) for b in blocks) for p in perms}
        profile[n - len(blocks)] += len(orbits)
    return tuple(profile)


def brute_cayley(g):
    perms = list(itertools.permutations(range(1, g.n + 1)))
    h = nx.Graph()
    h.add_nodes_from(perms)
    for p in perms:
        for i, j in g.edges:
            q = list(p)
            q[i - 1], q[j - 1] = q[j - 1], q[i - 1]
            h.add_edge(p, tuple(q))
    return h


def fraction_rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                q = rows[r][col] / rows[rank][col]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def incidence_rows(g, subset):
    rows = []
    for u, v in subset:
        x = [0] * g.n
        x[u - 1], x[v - 1] = 1, -1
        rows.append(x)
    return rows


def all_small_independent(g, j):
    """Every set of at most j edge vectors is independent over Q (rank oracle)."""
    for r in range(1, min(j, len(g.edges)) + 1):
        for s in itertools.combinations(g.edges, r):
            if fraction_rank(incidence_rows(g, s)) < r:
                return False
    return True


def smallest_dependent(g):
    """Size of the smallest rationally dependent set of edge vectors, or None."""
    for r in range(1, len(g.edges) + 1):
        for s in itertools.combinations(g.edges, r):
            if fraction_rank(incidence_rows(g, s)) < r:
                return r
    return None


def betti_over_q(faces):
    """Rational Betti numbers from boundary ranks of a complex given as chains."""
    index = [{s: k for k, s in enumerate(level)} for level in faces]
    ranks = [0] * (len(faces) + 1)
    for d in range(1, len(faces)):
        mat = [[0] * len(faces[d]) for _ in faces[d - 1]]
        for c, s in enumerate(faces[d]):
            for i in range(len(s)):
                mat[index[d - 1][s[:i] + s[i + 1:]]][c] = (-1) ** i
        ranks[d] = fraction_rank(mat) if mat else 0
    return [len(faces[d]) - ranks[d] - ranks[d + 1] for d in range(len(faces))]


def johnson(n, k):
    h = nx.Graph()
    subsets = [frozenset(s) for s in itertools.combinations(range(1, n + 1), k)]
    h.add_nodes_from(subsets)
    for a, b in itertools.combinations(subsets, 2):
        if len(a & b) == k - 1:
            h.add_edge(a, b)
    return h


def multinomial(boxes):
    return math.factorial(sum(boxes)) // math.prod(math.factorial(k) for k in boxes)


def atlas_graphs(max_nodes, max_edges=None, connected=False):
    """All graphs up to isomorphism on 1..max_nodes vertices (networkx atlas)."""
    from networkx.generators.atlas import graph_atlas_g

    from permutoscope.graph import Graph

    for h in graph_atlas_g():
        n = h.number_of_nodes()
        if not 0 < n <= max_nodes:
            continue
        if max_edges is not None and h.number_of_edges() > max_edges:
            continue
        if connected and not nx.is_connected(h):
            continue
        yield Graph(n, [(u + 1, v + 1) for u, v in h.edges])
