"""Named invariant suites run by ``permutoscope check``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .flats import VectorMatroid, flats
from .galois import compare_skeleta, core_agreement, girth_bound, verify_insertion
from .graph import (
    INFINITE,
    cayley_graph,
    complete_graph,
    girth,
    graph_isomorphism,
    inflate,
    star_graph,
    weights_independent,
)
from .homology import complex_homology, homology
from .identify import (
    cluster_permutohedron,
    graphicahedron,
    inflated_flag_poset,
    lower_ideal_factorization,
    one_skeleton,
    reduce,
    reduce_image,
)
from .poset import are_isomorphic, order_complex, skeleton

# informational homology is skipped above this many simplices
INFO_SIMPLEX_BUDGET = 100_000


@dataclass
class PropertyResult:
    name: str
    claim: str
    passed: bool
    informational: bool = False
    witness: object = None
    seconds: float = 0.0

    def to_json(self):
        return {
            "name": self.name,
            "claim": self.claim,
            "passed": self.passed,
            "informational": self.informational,
            "witness": self.witness,
            "seconds": round(self.seconds, 4),
        }


@dataclass
class CheckSuiteResult:
    suite: str
    target: str
    properties: list = field(default_factory=list)

    @property
    def ok(self):
        return all(p.passed for p in self.properties if not p.informational)

    def to_json(self):
        return {
            "suite": self.suite,
            "target": self.target,
            "ok": self.ok,
            "properties": [p.to_json() for p in self.properties],
        }

    def summary(self):
        lines = [f"check {self.suite} on {self.target}: {'PASS' if self.ok else 'FAIL'}"]
        for p in self.properties:
            tag = "INFO" if p.informational else ("pass" if p.passed else "FAIL")
            lines.append(f"  [{tag}] {p.name} ({p.seconds:.2f}s) -- {p.claim}")
            if p.witness is not None and (p.informational or not p.passed):
                lines.append(f"         {p.witness}")
        return "\n".join(lines)


class _Recorder:
    def __init__(self, result):
        self.result = result

    def __call__(self, name, claim, fn, informational=False):
        start = time.perf_counter()
        try:
            out = fn()
        except Exception as exc:  # a crash is a failed property with a witness
            out = (False, f"{type(exc).__name__}: {exc}")
        passed, witness = out if isinstance(out, tuple) else (bool(out), None)
        self.result.properties.append(
            PropertyResult(name, claim, bool(passed), informational, witness, time.perf_counter() - start)
        )


def suite_cayley(g, **_):
    res = CheckSuiteResult("cayley", g.name)
    rec = _Recorder(res)
    cl = cluster_permutohedron(g)
    cay, _ = cayley_graph(g)
    sk, _, _ = one_skeleton(cl)
    rec("one-skeleton", "the 1-skeleton of Cl is isomorphic to the Cayley graph of S_n",
        lambda: graph_isomorphism(sk, cay) is not None)
    rec("regular", "the Cayley graph is |E|-regular on n! vertices",
        lambda: cay.n == math.factorial(g.n) and all(cay.degree(v) == len(g.edges) for v in cay.vertices))
    rec("connected", "the Cayley graph is connected iff the graph is",
        lambda: cay.is_connected() == g.is_connected())
    return res


def suite_upper_ideal(g, **_):
    res = CheckSuiteResult("upper-ideal", g.name)
    rec = _Recorder(res)
    cl = cluster_permutohedron(g)
    L = flats(g)

    def check():
        for x in cl.minimal():
            if are_isomorphic(cl.induced(cl.upper_ideal(x)), L) is None:
                return False, f"upper ideal at {cl.labels[x]}"
        return True

    rec("upper-ideal", "upper ideal at every minimal element of Cl is isomorphic to Flats", check)
    return res


def suite_galois(g, **_):
    res = CheckSuiteResult("galois", g.name)
    rec = _Recorder(res)
    report = verify_insertion(g, cores=True)
    rec("monotone", "iota and pi are monotone", lambda: report.monotone_iota and report.monotone_pi)
    rec("adjunction", "pi(t) <= s iff t <= iota(s)", lambda: (report.adjunction_holds, report.witness or None))
    rec("closure", "iota.pi is a closure operator on Gr", lambda: report.closure_holds)
    rec("insertion", "pi.iota is the identity on Cl", lambda: report.insertion_holds)
    rec("statistics", "conn(iota(s)) = rk(s) and rk(pi(t)) = conn(t)", lambda: report.statistics_hold)
    rec("closed-count", "closed elements of Gr counted",
        lambda: (True, f"{report.closed} closed of {report.total}"), informational=True)
    rec("cores", "(Cl)_j is the core of (Gr)_j for j < n-1",
        lambda: (all(report.cores.values()), report.cores))
    res.report = report
    return res


def suite_girth(g, **_):
    res = CheckSuiteResult("girth", g.name)
    rec = _Recorder(res)
    cl, gr = cluster_permutohedron(g), graphicahedron(g)
    j = girth_bound(g)
    cmp = compare_skeleta(g, j, cl, gr)
    rec("below-girth", f"iota is an isomorphism (Cl)_{j} -> (Gr)_{j}",
        lambda: (cmp.isomorphic, f"profiles {cmp.cl_profile} vs {cmp.gr_profile}"))
    gi = girth(g)
    if gi is not INFINITE:
        above = compare_skeleta(g, gi - 1, cl, gr)
        rec("at-girth", f"expected negative: (Cl)_{gi - 1} and (Gr)_{gi - 1} differ",
            lambda: (not above.isomorphic, f"profiles {above.cl_profile} vs {above.gr_profile}"))
    return res


def suite_independence(g, **_):
    res = CheckSuiteResult("independence", g.name)
    rec = _Recorder(res)
    gi = girth(g)
    if gi is INFINITE:
        rec("forest", "weights are j-independent for every j on a forest",
            lambda: all(weights_independent(g, j) for j in range(len(g.edges) + 2)))
    else:
        rec("girth-minus-one", f"weights are {gi - 1}-independent", lambda: weights_independent(g, gi - 1))
        rec("at-girth", f"expected negative: weights are not {gi}-independent",
            lambda: (not weights_independent(g, gi), f"independent at j={gi}: {weights_independent(g, gi)}"))
    if len(g.edges) <= 12:
        vm = VectorMatroid.from_graph(g)

        def rank_agrees():
            import itertools

            for j in range(len(g.edges) + 1):
                by_rank = all(vm.rank(s) == len(s) for r in range(j + 1)
                              for s in itertools.combinations(range(len(g.edges)), r))
                if by_rank != weights_independent(g, j):
                    return False, f"disagreement at j={j}"
            return True

        rec("rank-oracle", "forest test agrees with rational rank of e_u - e_v", rank_agrees)
    return res


def suite_factorization(g, **_):
    res = CheckSuiteResult("factorization", g.name)
    rec = _Recorder(res)
    cl = cluster_permutohedron(g)

    def check():
        for s in range(cl.n):
            lower_ideal_factorization(cl, s)
        return True, f"{cl.n} lower ideals factorised"

    rec("lower-ideals", "every lower ideal of Cl is a product of smaller cluster-permutohedra", check)
    return res


def _is_cycle(g):
    return g.n >= 3 and g.is_connected() and all(g.degree(v) == 2 for v in g.vertices)


def _is_star3(g):
    return graph_isomorphism(g, star_graph(3)) is not None if g.n == 4 and len(g.edges) == 3 else False


def suite_torus_homology(g, **_):
    """Gr minus its top element is a torus for star:3 and for cycles, and the
    2-skeleton of Cl then has nonzero H_1 (star:3 and cycles with n >= 4)."""
    res = CheckSuiteResult("torus-homology", g.name)
    rec = _Recorder(res)
    cl, gr = cluster_permutohedron(g), graphicahedron(g)
    toroidal = _is_star3(g) or _is_cycle(g)
    if toroidal:
        dim = 2 if _is_star3(g) else g.n - 1
        expected = [math.comb(dim, k) for k in range(dim + 1)]

        def torus():
            h = homology(gr, drop_top=True)
            return h.betti == expected and not any(h.torsion), f"betti {h.betti}, torsion {h.torsion}"

        rec("gr-torus", f"Gr minus its top element has the homology of a {dim}-torus", torus)
    else:
        def informational_homology():
            K = order_complex(gr.without([gr.top()]))
            size = sum(K.f_vector())
            if size > INFO_SIMPLEX_BUDGET:
                return True, f"skipped: {size} simplices exceed {INFO_SIMPLEX_BUDGET}"
            return True, complex_homology(K).to_json()

        rec("gr-homology", "homology of Gr without its top element", informational_homology, informational=True)

    def h1():
        h = homology(skeleton(cl, "rank", 2))
        return h.betti[1] != 0, f"betti {h.betti}"

    obstruction = _is_star3(g) or (_is_cycle(g) and g.n >= 4)
    if obstruction:
        rec("H1-nonzero", "H_1 of the 2-skeleton of Cl is nonzero", h1)
    elif g.n >= 3:
        rec("H1", "H_1 of the 2-skeleton of Cl (asserted only for star:3 and cycles with n >= 4)",
            lambda: (True, h1()[1]), informational=True)
    rec("cl-vs-gr-count", "open question: Cl minus top vs Gr minus top element counts",
        lambda: (True, f"{cl.n - 1} vs {gr.n - 1}"), informational=True)
    return res


def suite_flags(g, boxes=None, **_):
    if boxes is None:
        raise ValueError("the flags suite needs --boxes")
    boxes = tuple(boxes)
    if g is None:
        g = complete_graph(len(boxes))
    target = f"{g.name or 'graph'} boxes={','.join(map(str, boxes))}"
    res = CheckSuiteResult("flags", target)
    rec = _Recorder(res)
    n = sum(boxes)
    raw = inflated_flag_poset(g, boxes)
    red = inflated_flag_poset(g, boxes, reduced=True)
    G, _ = inflate(g, boxes)
    expected = math.factorial(n) // math.prod(math.factorial(k) for k in boxes)
    rec("fixed-points", f"n!/(k1!...ks!) = {expected} minimal elements",
        lambda: (len(raw.minimal()) == expected == len(red.minimal()), len(raw.minimal())))
    rec("counts", "open question: raw vs reduced rank-1 counts",
        lambda: (True, {"raw_rank1": raw.profile()[1] if raw.n > 1 else 0,
                        "reduce_image_rank1": raw.induced(reduce_image(raw)).profile()[1],
                        "reduced_rank1": red.profile()[1] if red.n > 1 else 0,
                        "raw_profile": raw.profile(), "reduced_profile": red.profile()}),
        informational=True)
    L = flats(G)

    def upper():
        for x in red.minimal():
            if are_isomorphic(red.induced(red.upper_ideal(x)), L) is None:
                return False, f"upper ideal at {red.labels[x]}"
        return True

    rec("upper-ideal", "reduced upper ideal at each fixed point is isomorphic to Flats of the inflation", upper)
    degree = sum(boxes[a - 1] * boxes[b - 1] for a, b in g.edges)

    def skeleton_ok():
        sk, _, _ = one_skeleton(red)
        return all(sk.degree(v) == degree for v in sk.vertices), f"{sk.n} vertices, {len(sk.edges)} edges"

    rec("one-skeleton", f"reduced 1-skeleton is {degree}-regular", skeleton_ok)

    def reduce_ok():
        for e in raw.labels:
            r = reduce(e)
            if reduce(r) != r or r not in raw.index:
                return False, str(e)
        for a, b in raw.covers:
            if not raw.leq(raw.index[reduce(raw.labels[a])], raw.index[reduce(raw.labels[b])]):
                return False, f"{raw.labels[a]} <= {raw.labels[b]}"
        return True

    rec("reduce", "reduce is idempotent and order-compatible on the raw poset", reduce_ok)
    return res


SUITES = {
    "cayley": suite_cayley,
    "upper-ideal": suite_upper_ideal,
    "galois": suite_galois,
    "girth": suite_girth,
    "independence": suite_independence,
    "factorization": suite_factorization,
    "torus-homology": suite_torus_homology,
    "flags": suite_flags,
}


def check_suite(name, graph=None, boxes=None, seed=0):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name != "flags" and graph is None:
        raise ValueError(f"suite {name!r} needs a graph")
    return SUITES[name](graph, boxes=boxes, seed=seed)
