import pytest

from permutoscope.galois import (
    closed_elements,
    compare_skeleta,
    core_agreement,
    girth_bound,
    iota,
    iota_map,
    pi,
    pi_map,
    verify_insertion,
)
from permutoscope.graph import complete_graph, cycle_graph, parse_graph, path_graph
from permutoscope.identify import cluster_permutohedron, graphicahedron


def test_iota_pi_on_elements():
    g = cycle_graph(3)
    gr = graphicahedron(g)
    e = next(x for x in gr.labels if len(x.base) == 2)
    # two edges of a triangle already span it, so the closure adds the third
    assert iota(pi(e), g).base == g.edges
    assert pi(iota(pi(e), g)) == pi(e)


def test_maps_need_matching_graphs():
    with pytest.raises(ValueError):
        iota_map(cluster_permutohedron(path_graph(3)), graphicahedron(cycle_graph(3)))
    with pytest.raises(ValueError):
        pi_map(graphicahedron(path_graph(3)), cluster_permutohedron(cycle_graph(3)))


@pytest.mark.parametrize("spec", ["path:3", "star:3", "cycle:3", "cycle:4", "complete:4"])
def test_verify_insertion(spec):
    report = verify_insertion(parse_graph(spec), cores=True)
    assert report.ok, report.summary()
    assert report.closed == cluster_permutohedron(parse_graph(spec)).n
    js = report.to_json()
    assert js["ok"] and set(js["cores"]) == {str(j) for j in range(parse_graph(spec).n - 1)}


def test_closed_count_k4():
    g = complete_graph(4)
    assert len(closed_elements(graphicahedron(g), g)) == 131


def test_trees_have_no_extra_elements():
    g = path_graph(4)
    gr = graphicahedron(g)
    assert len(closed_elements(gr, g)) == gr.n


def test_core_agreement_fields():
    ca = core_agreement(cycle_graph(4), 1)
    assert ca.ok and ca.core_size <= ca.skeleton_size
    with pytest.raises(ValueError):
        core_agreement(cycle_graph(4), 3)


def test_girth_bound():
    assert girth_bound(cycle_graph(5)) == 3
    assert girth_bound(path_graph(4)) == 3
    assert girth_bound(complete_graph(4)) == 1


def test_compare_skeleta_profiles():
    c = compare_skeleta(cycle_graph(4), 3)
    assert not c.isomorphic
    assert c.cl_profile == (24, 48, 28, 1) and c.gr_profile == (24, 48, 28, 5)


def test_iota_examples():
    from permutoscope.flats import Clustering

    g = cycle_graph(4)
    cl = cluster_permutohedron(g)
    e = next(x for x in cl.labels if x.clustering == Clustering([[1, 2, 3], [4]]))
    assert iota(e, g).base == ((1, 2), (2, 3))
    bottom = cl.labels[cl.minimal()[0]]
    assert iota(bottom, g).base == ()
    top = cluster_permutohedron(cycle_graph(3)).labels[-1]
    assert iota(top, cycle_graph(3)).base == cycle_graph(3).edges


@pytest.mark.parametrize("spec,closed,total", [("star:3", 73, 73), ("cycle:3", 16, 19), ("complete:4", 131, 216)])
def test_closed_counts(spec, closed, total):
    r = verify_insertion(parse_graph(spec))
    assert (r.closed, r.total) == (closed, total)


def test_core_trace_empty_below_girth():
    ca = core_agreement(cycle_graph(4), 2)
    assert ca.ok and ca.trace == [] and ca.core_size == 100
