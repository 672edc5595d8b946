"""Integral simplicial homology of order complexes via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .poset import order_complex

MAX_SNF_SIDE = 200000


class ChainComplexError(RuntimeError):
    pass


@dataclass
class ChainComplex:
    """Bases per degree and sparse boundary maps.

    ``boundary[d]`` maps degree ``d`` to ``d-1`` as ``{column: {row: coeff}}``
    with columns indexing ``basis[d]`` and rows indexing ``basis[d-1]``;
    ``boundary[0]`` is empty.
    """

    basis: list
    boundary: list = field(default_factory=list)

    def sizes(self):
        return [len(b) for b in self.basis]

    def dense(self, d):
        rows = len(self.basis[d - 1]) if d > 0 else 0
        cols = len(self.basis[d])
        out = [[0] * cols for _ in range(rows)]
        for c, col in self.boundary[d].items():
            for r, x in col.items():
                out[r][c] = x
        return out


def chain_complex(K):
    """Simplicial chain complex with the ascending vertex orientation and
    signs ``(-1)^i`` for deleting the ``i``-th vertex."""
    basis = [list(level) for level in K.faces]
    index = [{s: k for k, s in enumerate(level)} for level in basis]
    boundary = [{}]
    for d in range(1, len(basis)):
        bd = {}
        for c, s in enumerate(basis[d]):
            col = {}
            for i in range(len(s)):
                face = s[:i] + s[i + 1:]
                col[index[d - 1][face]] = -1 if i % 2 else 1
            bd[c] = col
        boundary.append(bd)
    cc = ChainComplex(basis, boundary)
    _check_square_zero(cc)
    return cc


def _check_square_zero(cc):
    for d in range(2, len(cc.basis)):
        outer, inner = cc.boundary[d - 1], cc.boundary[d]
        for c, col in inner.items():
            acc = {}
            for mid, x in col.items():
                for r, y in outer[mid].items():
                    acc[r] = acc.get(r, 0) + x * y
            if any(acc.values()):
                raise ChainComplexError(f"boundary of boundary is nonzero in degree {d}")


def _to_rows(matrix):
    """Accept a dense list of lists or a ``{col: {row: x}}`` dict; return ``{row: {col: x}}``."""
    rows = {}
    if isinstance(matrix, dict):
        for c, col in matrix.items():
            for r, x in col.items():
                if x:
                    rows.setdefault(r, {})[c] = x
        return rows
    for r, line in enumerate(matrix):
        for c, x in enumerate(line):
            if x:
                rows.setdefault(r, {})[c] = int(x)
    return rows


def _eliminate_units(rows):
    """Pivot on +-1 entries until none remain.  Returns the number of pivots."""
    cols = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    pivots = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows):
            row = rows.get(r)
            if row is None:
                continue
            c = next((c for c, x in sorted(row.items()) if x in (1, -1)), None)
            if c is None:
                continue
            p = row[c]
            for r2 in list(cols[c]):
                if r2 == r:
                    continue
                other = rows[r2]
                q = other[c] * p  # p is a unit, so other[c] / p == other[c] * p
                for c2, x in row.items():
                    y = other.get(c2, 0) - q * x
                    if y:
                        if c2 not in other:
                            cols.setdefault(c2, set()).add(r2)
                        other[c2] = y
                    elif c2 in other:
                        del other[c2]
                        cols[c2].discard(r2)
                if not other:
                    del rows[r2]
            for c2 in row:
                cols[c2].discard(r)
            del rows[r]
            pivots += 1
            progress = True
    return pivots


def _dense_snf_diagonal(a):
    """Smith normal form diagonal of a small dense integer matrix (entries >= 1)."""
    a = [list(r) for r in a]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest remaining entry of row/column t onto the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
                _, i, j = min(cands)
                a[t], a[i] = a[i], a[t]
                for row in a:
                    row[t], row[j] = row[j], row[t]
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            i = bad[0]
            a[t] = [x + y for x, y in zip(a[t], a[i])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_normal_form(matrix):
    """Invariant factors ``d1 | d2 | ... | dr`` and rank ``r`` of an integer matrix.

    Unit pivots are eliminated sparsely first; whatever is left (no +-1
    entries) is finished densely with smallest-absolute-value pivoting.
    """
    rows = _to_rows(matrix)
    if isinstance(matrix, dict):
        side = max(len(rows), len(matrix))
    else:
        side = max(len(matrix), len(matrix[0]) if matrix else 0)
    if side > MAX_SNF_SIDE:
        raise ValueError(f"matrix side {side} exceeds the limit {MAX_SNF_SIDE}")
    units = _eliminate_units(rows)
    rest = []
    if rows:
        col_ids = sorted({c for row in rows.values() for c in row})
        cpos = {c: k for k, c in enumerate(col_ids)}
        for r in sorted(rows):
            line = [0] * len(col_ids)
            for c, x in rows[r].items():
                line[cpos[c]] = x
            rest.append(line)
    factors = [1] * units + _dense_snf_diagonal(rest)
    return factors, len(factors)


def _divisor_chain_ok(factors):
    return all(b % a == 0 for a, b in zip(factors, factors[1:]))


@dataclass
class HomologyReport:
    betti: list
    torsion: list
    euler: int
    faces: list
    reduced: bool = False

    def to_json(self):
        return {"betti": self.betti, "torsion": self.torsion, "euler": self.euler, "faces": self.faces}


def _trim_poset(P, drop_top, drop_bottom):
    drop = []
    if drop_top:
        t = P.top()
        if t is not None:
            drop.append(t)
    if drop_bottom:
        b = P.bottom()
        if b is not None:
            drop.append(b)
    return P.without(drop) if drop else P


def complex_homology(K, reduced=False):
    cc = chain_complex(K)
    sizes = cc.sizes()
    top = len(sizes)
    ranks = [0] * (top + 1)
    torsion_by_map = [[] for _ in range(top + 1)]
    for d in range(1, top):
        factors, r = smith_normal_form(cc.boundary[d])
        if not _divisor_chain_ok(factors):
            raise ChainComplexError("invariant factors do not form a divisor chain")
        ranks[d] = r
        torsion_by_map[d] = [f for f in factors if f > 1]
    betti = []
    torsion = []
    for d in range(top):
        betti.append(sizes[d] - ranks[d] - ranks[d + 1])
        torsion.append(torsion_by_map[d + 1])
    euler = sum((-1) ** d * s for d, s in enumerate(sizes))
    if reduced and sizes and sizes[0]:
        betti[0] -= 1
        euler -= 1
    return HomologyReport(betti, torsion, euler, sizes, reduced)


def homology(P, reduced=False, drop_top=False, drop_bottom=False):
    """Homology of the order complex of ``P`` (optionally without its greatest
    and/or least element)."""
    return complex_homology(order_complex(_trim_poset(P, drop_top, drop_bottom)), reduced)


def euler_characteristic(P, drop_top=False, drop_bottom=False):
    K = order_complex(_trim_poset(P, drop_top, drop_bottom))
    return sum((-1) ** d * s for d, s in enumerate(K.f_vector()))
