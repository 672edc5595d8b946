"""Exit criteria of the build, one test per criterion at its stated time limit.

Run ``pytest tests/test_acceptance.py -v`` for a PASS/FAIL line per criterion.
"""

import itertools
import time
from contextlib import contextmanager

import networkx as nx
import pytest

from oracles import atlas_graphs, brute_cayley, coset_profile, johnson, multinomial, nx_graph, smallest_dependent
from permutoscope.flats import flats
from permutoscope.galois import closed_elements, compare_skeleta, iota_map, pi_map
from permutoscope.graph import Graph, complete_graph, cycle_graph, parse_graph, path_graph, weights_independent
from permutoscope.homology import homology
from permutoscope.identify import (
    cluster_permutohedron,
    graphicahedron,
    inflated_flag_poset,
    lower_ideal_factorization,
    one_skeleton,
    partial_flag_poset,
)
from permutoscope.poset import are_isomorphic, core, is_closure, is_galois, skeleton

GRAPHS = ["path:3", "path:4", "star:3", "cycle:3", "cycle:4", "complete:4"]


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


@pytest.mark.acceptance(1)
def test_permutohedron_recovery():
    with within(1):
        for spec, profile in [("path:3", (6, 6, 1)), ("path:4", (24, 36, 14, 1))]:
            g = parse_graph(spec)
            cl, gr = cluster_permutohedron(g), graphicahedron(g)
            assert cl.profile() == profile
            assert are_isomorphic(cl, gr) is not None
    assert coset_profile(path_graph(3)) == (6, 6, 1)
    assert coset_profile(path_graph(4)) == (24, 36, 14, 1)


@pytest.mark.acceptance(2)
def test_cayley_one_skeleton():
    with within(10):
        for spec in GRAPHS:
            g = parse_graph(spec)
            sk, verts, _ = one_skeleton(cluster_permutohedron(g))
            assert nx.is_isomorphic(nx_graph(sk), brute_cayley(g)), spec


@pytest.mark.acceptance(3)
def test_local_geometry():
    with within(10):
        for spec in GRAPHS:
            g = parse_graph(spec)
            cl, L = cluster_permutohedron(g), flats(g)
            for x in cl.minimal():
                assert are_isomorphic(cl.induced(cl.upper_ideal(x)), L) is not None, (spec, x)


@pytest.mark.acceptance(4)
def test_galois_insertion():
    with within(30):
        for spec in GRAPHS:
            g = parse_graph(spec)
            cl, gr = cluster_permutohedron(g), graphicahedron(g)
            i, p = iota_map(cl, gr), pi_map(gr, cl)
            # pi is the lower adjoint: pi(t) <= s iff t <= iota(s)
            assert is_galois(p, i), spec
            assert is_closure(i.compose(p)), spec
            assert all(p(i(s)) == s for s in range(cl.n)), spec
            assert all(gr.stats["conn"][i(s)] == cl.rank[s] for s in range(cl.n)), spec
            assert all(cl.rank[p(t)] == gr.stats["conn"][t] for t in range(gr.n)), spec


@pytest.mark.acceptance(5)
def test_core_agreement_k4():
    with within(60):
        g = complete_graph(4)
        gr2 = skeleton(graphicahedron(g), "conn", 2)
        cl2 = skeleton(cluster_permutohedron(g), "rank", 2)
        reduced, trace = core(gr2)
        assert reduced.n == 130
        assert are_isomorphic(reduced, cl2) is not None
        closed = set(closed_elements(gr2, g))
        assert trace and all(r.kind == "up" for r in trace)
        assert all(r.element not in closed for r in trace)


@pytest.mark.acceptance(6)
def test_girth_coincidence():
    with within(30):
        c4 = compare_skeleta(cycle_graph(4), 2)
        assert c4.isomorphic and sum(c4.cl_profile) == sum(c4.gr_profile) == 100
        k4 = complete_graph(4)
        assert compare_skeleta(k4, 1).isomorphic
        above = compare_skeleta(k4, 2)
        assert not above.isomorphic
        assert above.cl_profile[2] == 34 and above.gr_profile[2] == 82


@pytest.mark.acceptance(7)
def test_independence():
    with within(5):
        for n in (3, 4, 5):
            assert weights_independent(cycle_graph(n), n - 1)
            assert not weights_independent(cycle_graph(n), n)
        for tree in (path_graph(5), parse_graph("star:4")):
            assert all(weights_independent(tree, j) for j in range(12))
        count = 0
        eight = [cycle_graph(8), path_graph(9), parse_graph("star:8"), parse_graph("multipartite:2,4")]
        for g in itertools.chain(atlas_graphs(7, max_edges=8), eight):
            smallest = smallest_dependent(g)
            for j in range(len(g.edges) + 1):
                assert weights_independent(g, j) == (smallest is None or j < smallest), (g, j)
            count += 1
        assert count == 399


@pytest.mark.acceptance(8)
def test_toroidal_homology():
    with within(120):
        star = homology(graphicahedron(parse_graph("star:3")), drop_top=True)
        assert star.betti == [1, 2, 1] and not any(star.torsion) and star.euler == 0
        c3 = homology(graphicahedron(cycle_graph(3)), drop_top=True)
        assert c3.betti == [1, 2, 1]
        gr4 = graphicahedron(cycle_graph(4))
        c4 = homology(gr4, drop_top=True)
        assert c4.betti == [1, 3, 3, 1] and c4.euler == 0
        assert gr4.without([gr4.top()]).profile("conn") == (24, 48, 28, 4)


@pytest.mark.acceptance(9)
def test_non_formality_obstruction():
    with within(120):
        for spec in ("star:3", "cycle:4"):
            h = homology(skeleton(cluster_permutohedron(parse_graph(spec)), "rank", 2))
            assert h.betti[1] != 0, (spec, h.betti)


@pytest.mark.acceptance(10)
def test_galois_homotopy_shadow():
    with within(120):
        g = cycle_graph(4)
        cl, gr = cluster_permutohedron(g), graphicahedron(g)
        for j in (1, 2):
            a = homology(skeleton(cl, "rank", j))
            b = homology(skeleton(gr, "conn", j))
            assert a.betti == b.betti and a.torsion == b.torsion, j


@pytest.mark.acceptance(11)
def test_partial_flags():
    with within(10):
        raw = partial_flag_poset((2, 2))
        red = partial_flag_poset((2, 2), reduced=True)
        assert len(raw.minimal()) == len(red.minimal()) == 6 == multinomial((2, 2))
        assert raw.profile()[1] == 16
        assert red.profile()[1] == 12
        sk, _, _ = one_skeleton(red)
        assert sk.n == 6 and all(sk.degree(v) == 4 for v in sk.vertices)
        assert nx.is_isomorphic(nx_graph(sk), johnson(4, 2))
        k22 = flats(parse_graph("multipartite:2,2"))
        assert k22.n == 12
        for x in red.minimal():
            assert are_isomorphic(red.induced(red.upper_ideal(x)), k22) is not None
        edge = path_graph(2)
        a = inflated_flag_poset(edge, (2, 2))
        assert a.labels == raw.labels and a.covers == raw.covers
        for spec in ("path:3", "cycle:3"):
            g = parse_graph(spec)
            f, cl = inflated_flag_poset(g, (1,) * g.n), cluster_permutohedron(g)
            assert f.labels == cl.labels and f.covers == cl.covers


@pytest.mark.acceptance(12)
def test_lower_ideal_factorization():
    with within(60):
        for spec in ("path:4", "cycle:4"):
            cl = cluster_permutohedron(parse_graph(spec))
            for s in range(cl.n):
                prod, phi = lower_ideal_factorization(cl, s)
                assert sorted(phi) == sorted(cl.lower_ideal(s))
                assert {(phi[a], phi[b]) for a, b in prod.covers} == {
                    (a, b) for a, b in cl.covers if a in set(phi) and b in set(phi)
                }


@pytest.mark.acceptance(13)
def test_core_uniqueness():
    with within(60):
        k4 = complete_graph(4)
        for P in (graphicahedron(cycle_graph(3)), skeleton(graphicahedron(k4), "conn", 2)):
            reference, _ = core(P, rng=0)
            seen = {frozenset(reference.labels)}
            for seed in range(100):
                C, _ = core(P, rng=seed)
                assert C.n == reference.n
                key = frozenset(C.labels)
                if key not in seen:
                    assert are_isomorphic(C, reference) is not None, seed
                    seen.add(key)
