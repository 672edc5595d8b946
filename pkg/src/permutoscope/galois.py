"""The Galois insertion of the cluster-permutohedron into the graphicahedron.

``iota`` sends ``(C, A)`` to ``(E_C, A)`` where ``E_C`` is the set of edges
inside blocks of ``C``; ``pi`` sends ``(W, A)`` to ``(C(W), A)``.  ``pi`` is
the lower adjoint, so ``iota . pi`` is a closure operator on Gr whose
closed elements are a copy of Cl.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

from .graph import INFINITE, girth
from .identify import IdentElement, cluster_permutohedron, graphicahedron
from .poset import MonotoneMap, are_isomorphic, beats, core, is_closure, is_galois, skeleton


def _same_graph(cl, gr):
    if cl.graph != gr.graph:
        raise ValueError("posets come from different graphs")


def iota(e, graph):
    return IdentElement(e.clustering.inner_edges(graph), e.clustering, e.table)


def pi(e):
    return IdentElement(e.clustering, e.clustering, e.table)


def iota_map(cl, gr):
    _same_graph(cl, gr)
    return MonotoneMap(cl, gr, [gr.index[iota(e, cl.graph)] for e in cl.labels])


def pi_map(gr, cl):
    _same_graph(cl, gr)
    return MonotoneMap(gr, cl, [cl.index[pi(e)] for e in gr.labels])


@dataclass
class GaloisReport:
    graph: str
    monotone_iota: bool
    monotone_pi: bool
    adjunction_holds: bool
    closure_holds: bool
    insertion_holds: bool
    statistics_hold: bool
    skeleta_preserved: bool
    closed: int
    total: int
    cores: dict = field(default_factory=dict)
    girth_isomorphism: bool | None = None
    witness: list = field(default_factory=list)

    @property
    def ok(self):
        return all([
            self.monotone_iota, self.monotone_pi, self.adjunction_holds, self.closure_holds,
            self.insertion_holds, self.statistics_hold, self.skeleta_preserved,
            all(self.cores.values()), self.girth_isomorphism is not False,
        ])

    def to_json(self):
        out = asdict(self)
        out["cores"] = {str(k): v for k, v in self.cores.items()}
        out["ok"] = self.ok
        return out

    def summary(self):
        flag = "PASS" if self.ok else "FAIL"
        lines = [
            f"galois insertion for {self.graph}: {flag}",
            f"  monotone iota/pi: {self.monotone_iota}/{self.monotone_pi}",
            f"  adjunction pi -| iota: {self.adjunction_holds}",
            f"  iota.pi is a closure: {self.closure_holds}",
            f"  pi.iota = id: {self.insertion_holds}",
            f"  conn.iota = rk, rk.pi = conn: {self.statistics_hold}",
            f"  skeleta preserved: {self.skeleta_preserved}",
            f"  closed elements: {self.closed} of {self.total}",
        ]
        for j, ok in sorted(self.cores.items()):
            lines.append(f"  core of (Gr)_{j} is (Cl)_{j}: {ok}")
        if self.girth_isomorphism is not None:
            lines.append(f"  skeleta below girth isomorphic: {self.girth_isomorphism}")
        for w in self.witness:
            lines.append(f"  witness: {w}")
        return "\n".join(lines)


def closed_elements(gr, graph):
    """Ids of elements ``(W, A)`` of Gr with ``E_{C(W)} = W``."""
    return [i for i, e in enumerate(gr.labels) if e.clustering.inner_edges(graph) == e.base]


def verify_insertion(g, cores=False, force_large=False):
    cl = cluster_permutohedron(g, force_large)
    gr = graphicahedron(g, force_large)
    f = iota_map(cl, gr)
    p = pi_map(gr, cl)
    witness = []
    mono_i, mono_p = f.is_monotone(), p.is_monotone()
    adjunction = is_galois(p, f)
    clos = f.compose(p)
    closure = is_closure(clos)
    insertion = all(p(f(s)) == s for s in range(cl.n))
    if not insertion:
        s = next(s for s in range(cl.n) if p(f(s)) != s)
        witness.append(f"pi(iota({cl.labels[s]})) != itself")
    conn, rk_cl, rk_gr = gr.stats["conn"], cl.rank, gr.rank
    stats_ok = all(conn[f(s)] == rk_cl[s] for s in range(cl.n)) and all(
        rk_cl[p(t)] == conn[t] for t in range(gr.n)
    )
    skeleta = stats_ok and all(rk_gr[f(s)] >= rk_cl[s] for s in range(cl.n))
    if not adjunction:
        for s in range(gr.n):
            bad = next((t for t in range(cl.n) if cl.leq(p(s), t) != gr.leq(s, f(t))), None)
            if bad is not None:
                witness.append(f"adjunction fails at ({gr.labels[s]}, {cl.labels[bad]})")
                break
    closed = closed_elements(gr, g)
    if closure and sorted(set(clos.image)) != closed:
        witness.append("fixed points of iota.pi differ from E_{C(W)} = W elements")
        closure = False
    report = GaloisReport(
        graph=g.name or f"graph(n={g.n})",
        monotone_iota=mono_i,
        monotone_pi=mono_p,
        adjunction_holds=adjunction,
        closure_holds=closure,
        insertion_holds=insertion,
        statistics_hold=stats_ok,
        skeleta_preserved=skeleta,
        closed=len(closed),
        total=gr.n,
        witness=witness,
    )
    if report.adjunction_holds and report.insertion_holds and not report.closure_holds:
        raise AssertionError("a Galois insertion must yield a closure operator")
    if cores:
        for j in range(max(0, g.n - 1)):
            report.cores[j] = core_agreement(g, j, cl=cl, gr=gr).ok
        report.girth_isomorphism = girth_isomorphism(g, cl=cl, gr=gr)
    return report


@dataclass
class CoreAgreement:
    j: int
    image_is_closed_set: bool
    image_beat_free: bool
    core_isomorphic: bool
    core_size: int
    skeleton_size: int
    trace: list

    @property
    def ok(self):
        return self.image_is_closed_set and self.image_beat_free and self.core_isomorphic


def core_agreement(g, j, cl=None, gr=None):
    """Check that ``(Cl)_j`` is the core of ``(Gr)_j`` two ways: as the closed
    elements of the restricted closure (and beat-free), and by a generic
    beat-removal run followed by an isomorphism test."""
    if not 0 <= j < g.n - 1:
        raise ValueError(f"need 0 <= j < n-1 = {g.n - 1}")
    cl = cl if cl is not None else cluster_permutohedron(g)
    gr = gr if gr is not None else graphicahedron(g)
    cl_j = skeleton(cl, "rank", j)
    gr_j = skeleton(gr, "conn", j)
    image = {gr_j.index[iota(e, g)] for e in cl_j.labels}
    closed = {i for i, e in enumerate(gr_j.labels) if e.clustering.inner_edges(g) == e.base}
    sub = gr_j.induced(image)
    up, down = beats(sub)
    reduced, trace = core(gr_j)
    iso = are_isomorphic(reduced, cl_j) is not None
    return CoreAgreement(j, image == closed, not up and not down, iso, reduced.n, gr_j.n, trace)


@dataclass
class SkeletonComparison:
    j: int
    isomorphic: bool
    cl_profile: tuple
    gr_profile: tuple


def compare_skeleta(g, j, cl=None, gr=None):
    """Whether ``iota`` restricts to an isomorphism ``(Cl)_j -> (Gr)_j`` that
    matches rank with conn.  Profiles are element counts by rank / conn."""
    cl = cl if cl is not None else cluster_permutohedron(g)
    gr = gr if gr is not None else graphicahedron(g)
    cl_j = skeleton(cl, "rank", j)
    gr_j = skeleton(gr, "conn", j)
    ok = cl_j.n == gr_j.n
    if ok:
        phi = [gr_j.index.get(iota(e, g)) for e in cl_j.labels]
        ok = None not in phi and len(set(phi)) == cl_j.n
        if ok:
            covers = {(phi[a], phi[b]) for a, b in cl_j.covers}
            ok = covers == set(gr_j.covers) and all(
                gr_j.stats["conn"][phi[s]] == cl_j.rank[s] for s in range(cl_j.n)
            )
    return SkeletonComparison(j, ok, cl_j.profile("rank"), gr_j.profile("conn"))


def girth_bound(g):
    """``g - 2`` for the girth, or the full rank ``n - 1`` for a forest."""
    gi = girth(g)
    return g.n - 1 if gi is INFINITE else gi - 2


def girth_isomorphism(g, cl=None, gr=None):
    return compare_skeleta(g, girth_bound(g), cl, gr).isomorphic
