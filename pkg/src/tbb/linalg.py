"""Exact sparse row reduction over QQ or GF(p).

Rows are dicts ``{column index: value}``; the column order passed to
:func:`build_matrix` is the pivot priority (leftmost first).  Over QQ
the elimination is fraction-free: rows are kept as primitive integer
vectors and only divided by their pivot at the very end.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import UnknownMonomial
from .fields import QQ
from .laurent import LaurentPoly, Monomial, delta

log = logging.getLogger(__name__)

BITSIZE_TRIPWIRE = 4096


@dataclass
class CoeffMatrix:
    rows: list
    columns: list
    field: object = QQ
    provenance: list = dc_field(default_factory=list)
    nvars: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.columns))

    def dense(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(len(self.columns))] for r in self.rows]


@dataclass
class EchelonForm:
    rank: int
    pivots: list          # pivot monomials, in column order
    rows: list            # LaurentPoly per pivot, pivot coefficient 1
    pivot_rows: dict = dc_field(default_factory=dict)   # column index -> sparse row


def build_matrix(polys: Sequence[LaurentPoly], columns: Sequence[Monomial],
                 provenance: Sequence | None = None, field=None, nvars=None) -> CoeffMatrix:
    columns = list(columns)
    index = {m: j for j, m in enumerate(columns)}
    if field is None:
        field = polys[0].field if polys else QQ
    if nvars is None:
        nvars = polys[0].nvars if polys else (len(columns[0]) if columns else 0)
    rows = []
    for p in polys:
        row = {}
        for m, c in p.terms.items():
            try:
                row[index[m]] = c
            except KeyError:
                raise UnknownMonomial(f"monomial {m} is not a column") from None
        rows.append(row)
    prov = list(provenance) if provenance is not None else [None] * len(rows)
    return CoeffMatrix(rows, columns, field, prov, nvars)


# -- GF(p) -----------------------------------------------------------------

def _reduce_modp(row, pivots, p):
    for c in [c for c in row if c in pivots]:
        a = row.get(c)
        if not a:
            continue
        for j, v in pivots[c].items():
            w = (row.get(j, 0) - a * v) % p
            if w:
                row[j] = w
            else:
                row.pop(j, None)
    return row


def _echelon_modp(rows, p):
    pivots: dict[int, dict] = {}
    for r in rows:
        row = _reduce_modp(dict(r), pivots, p)
        if not row:
            continue
        c = min(row)
        inv = pow(row[c], -1, p)
        row = {j: v * inv % p for j, v in row.items()}
        for other in pivots.values():
            a = other.get(c)
            if a:
                for j, v in row.items():
                    w = (other.get(j, 0) - a * v) % p
                    if w:
                        other[j] = w
                    else:
                        other.pop(j, None)
        pivots[c] = row
    return pivots


# -- QQ, fraction-free ---------------------------------------------------------

def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    c = min(row)
    if row[c] < 0:
        g = -g
    if g not in (0, 1):
        for j in row:
            row[j] //= g
    return row


def _integer_row(r):
    den = 1
    for v in r.values():
        den = den * v.denominator // gcd(den, v.denominator)
    return {j: int(v * den) for j, v in r.items() if v}


def _eliminate_int(row, c, prow):
    a = row[c]
    b = prow[c]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {}
    for j, v in row.items():
        out[j] = v * b
    for j, v in prow.items():
        w = out.get(j, 0) - a * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out) if out else out


def _echelon_qq(rows):
    pivots: dict[int, dict] = {}
    for r in rows:
        row = _integer_row(r)
        for c in [c for c in row if c in pivots]:
            if c in row:
                row = _eliminate_int(row, c, pivots[c])
        if not row:
            continue
        row = _primitive(row)
        c = min(row)
        for k, other in list(pivots.items()):
            if c in other:
                pivots[k] = _eliminate_int(other, c, row)
        pivots[c] = row
    bits = max((abs(v).bit_length() for r in pivots.values() for v in r.values()), default=0)
    if bits > BITSIZE_TRIPWIRE:
        log.warning("echelon entries reached %d bits", bits)
    out = {}
    for c, row in pivots.items():
        piv = row[c]
        out[c] = {j: Fraction(v, piv) for j, v in row.items()}
    return out


def echelon(M: CoeffMatrix) -> EchelonForm:
    """Reduced row echelon form; pivots are the leftmost nonzero columns."""
    f = M.field
    if f == QQ:
        pivots = _echelon_qq(M.rows)
    else:
        pivots = _echelon_modp(M.rows, f.p)
    order = sorted(pivots)
    polys = [LaurentPoly({M.columns[j]: v for j, v in pivots[c].items()}, M.nvars, f)
             for c in order]
    return EchelonForm(len(order), [M.columns[c] for c in order], polys,
                       {c: pivots[c] for c in order})


def rank(M: CoeffMatrix) -> int:
    return echelon(M).rank


def low_degree_members(rows: Sequence[LaurentPoly], d: int) -> list[LaurentPoly]:
    """Echelon rows supported in Ball(d).

    With degree-descending columns these span every member of the row
    space of degree <= d.
    """
    return [p for p in rows if p.terms and max(delta(m) for m in p.terms) <= d]


def poly_rank(polys: Sequence[LaurentPoly], field=None) -> int:
    if not polys:
        return 0
    cols = sorted({m for p in polys for m in p.terms})
    return rank(build_matrix(polys, cols, field=field))


def nullspace(M: CoeffMatrix) -> list[list]:
    """Basis of {v : v^T M = 0}, the left kernel, as dense coefficient lists."""
    f = M.field
    nrows = len(M.rows)
    ncols = len(M.columns)
    # transpose: solve M^T v = 0
    t_rows = [dict() for _ in range(ncols)]
    for i, r in enumerate(M.rows):
        for j, v in r.items():
            t_rows[j][i] = v
    piv = _echelon_qq(t_rows) if f == QQ else _echelon_modp(t_rows, f.p)
    free = [j for j in range(nrows) if j not in piv]
    basis = []
    for fj in free:
        v = [f.zero] * nrows
        v[fj] = f.one
        for c, row in piv.items():
            a = row.get(fj)
            if a:
                v[c] = f.neg(a)
        basis.append(v)
    return basis


def dump_matrix_market(M: CoeffMatrix) -> str:
    """Coordinate-format text dump of a coefficient matrix."""
    lines = ["%%MatrixMarket matrix coordinate rational general",
             "% columns: " + " ".join(",".join(map(str, m)) for m in M.columns)]
    nnz = sum(len(r) for r in M.rows)
    lines.append(f"{len(M.rows)} {len(M.columns)} {nnz}")
    for i, r in enumerate(M.rows, start=1):
        for j in sorted(r):
            lines.append(f"{i} {j + 1} {r[j]}")
    return "\n".join(lines) + "\n"
