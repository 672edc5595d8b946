"""Posets attached to simple graphs and machine checks of their structure."""

from .flats import Clustering, FlatLattice, VectorMatroid, flat_closure, flats, join, meet, vector_flats
from .galois import GaloisReport, core_agreement, girth_isomorphism, iota, pi, verify_insertion
from .graph import (
    INFINITE,
    Graph,
    cayley_graph,
    components,
    girth,
    inflate,
    parse_graph,
    weights_independent,
)
from .homology import HomologyReport, chain_complex, euler_characteristic, homology, smith_normal_form
from .identify import (
    IdentElement,
    IdentPoset,
    cluster_permutohedron,
    graphicahedron,
    identification_poset,
    inflated_flag_poset,
    lower_ideal_factorization,
    one_skeleton,
    orbit_tables,
    partial_flag_poset,
    reduce,
)
from .limits import SizeGuardError
from .poset import (
    FinitePoset,
    MonotoneMap,
    SimplicialComplex,
    are_isomorphic,
    beats,
    core,
    direct_product,
    from_covers,
    is_closure,
    is_galois,
    order_complex,
    skeleton,
)

__version__ = "0.1.0"
