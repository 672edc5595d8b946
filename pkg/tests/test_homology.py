import itertools
from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import betti_over_q
from permutoscope.homology import (
    MAX_SNF_SIDE,
    chain_complex,
    complex_homology,
    euler_characteristic,
    homology,
    smith_normal_form,
)
from permutoscope.poset import FinitePoset, antichain, boolean_lattice, chain, order_complex
from test_poset import posets


def determinantal_factors(rows):
    """Invariant factors from gcds of k x k minors."""
    m = sympy.Matrix(rows)
    r = m.rank()
    d = [1]
    for k in range(1, r + 1):
        g = 0
        for rs in itertools.combinations(range(m.rows), k):
            for cs in itertools.combinations(range(m.cols), k):
                g = gcd(g, int(m.extract(list(rs), list(cs)).det()))
        d.append(abs(g))
    return [d[k] // d[k - 1] for k in range(1, r + 1)]


matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_minor_gcds(rows):
    factors, rank = smith_normal_form(rows)
    assert rank == sympy.Matrix(rows).rank()
    assert factors == determinantal_factors(rows)


def test_snf_examples():
    assert smith_normal_form([[2, 0], [0, 3]]) == ([1, 6], 2)
    assert smith_normal_form([[2, 4], [6, 8]]) == ([2, 4], 2)
    assert smith_normal_form([[0, 0], [0, 0]]) == ([], 0)
    assert smith_normal_form({0: {0: 2}, 1: {1: 2}}) == ([2, 2], 2)


def test_snf_size_limit():
    with pytest.raises(ValueError):
        smith_normal_form({i: {i: 1} for i in range(MAX_SNF_SIDE + 1)})


def test_chain_complex_squares_to_zero():
    cc = chain_complex(order_complex(boolean_lattice("abc")))
    for d in range(2, len(cc.basis)):
        a = sympy.Matrix(cc.dense(d - 1))
        b = sympy.Matrix(cc.dense(d))
        assert (a * b).is_zero_matrix


@settings(max_examples=60, deadline=None)
@given(posets(max_n=7))
def test_betti_agree_with_rational_ranks(P):
    K = order_complex(P)
    h = complex_homology(K)
    assert h.betti == betti_over_q([list(level) for level in K.faces])


@given(posets(max_n=7))
def test_euler_consistency(P):
    h = homology(P)
    assert h.euler == sum((-1) ** d * b for d, b in enumerate(h.betti))
    assert h.euler == euler_characteristic(P)
    assert homology(P, reduced=True).euler == h.euler - 1


def test_contractible_and_spheres():
    assert homology(chain(4)).betti == [1, 0, 0, 0]
    assert homology(antichain(3)).betti == [3]
    assert homology(antichain(3), reduced=True).betti == [2]
    # proper part of the Boolean lattice on 3 atoms is a circle
    B = boolean_lattice("abc")
    assert homology(B, drop_top=True, drop_bottom=True).betti == [1, 1]


def face_poset(facets):
    faces = sorted({tuple(sorted(s)) for f in facets for r in range(1, len(f) + 1)
                    for s in itertools.combinations(f, r)}, key=lambda s: (len(s), s))
    index = {f: i for i, f in enumerate(faces)}
    covers = [(index[s], index[f]) for f in faces for s in itertools.combinations(f, len(f) - 1) if s]
    return FinitePoset(faces, covers)


def test_projective_plane_torsion():
    rp2 = [(1, 2, 4), (1, 2, 6), (1, 3, 4), (1, 3, 5), (1, 5, 6),
           (2, 3, 5), (2, 3, 6), (2, 4, 5), (3, 4, 6), (4, 5, 6)]
    h = homology(face_poset(rp2))
    assert h.betti == [1, 0, 0]
    assert h.torsion == [[], [2], []]
    assert h.euler == 1


def test_torus_betti():
    # 7-vertex torus
    torus = [tuple(sorted(((i) % 7 + 1, (i + a) % 7 + 1, (i + b) % 7 + 1)))
             for i in range(7) for a, b in ((1, 3), (2, 3))]
    h = homology(face_poset(torus))
    assert h.betti == [1, 2, 1] and not any(h.torsion)


def test_report_json():
    out = homology(chain(2)).to_json()
    assert set(out) == {"betti", "torsion", "euler", "faces"} and out["faces"] == [2, 1]
