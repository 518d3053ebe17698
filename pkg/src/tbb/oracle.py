"""Brute-force reference: Laurent systems in doubled variables.

Each x_i^-1 becomes a fresh variable y_i, the relations x_i y_i - 1 are
added, and the ideal is cut at total degree D: the span of m*g for all
generators g and ordinary monomials m with deg(m*g) <= D.  Nothing here
shares code with the solver; arithmetic is redone locally on plain
ints (mod p) or Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Sequence

WINDOW = 3


@dataclass(frozen=True)
class Unstable:
    """No stabilisation within the degree budget; ``history`` maps D to the value seen."""
    history: tuple = ()

    def __bool__(self):
        raise TypeError("an Unstable oracle answer has no truth value")


def _modulus(field):
    return getattr(field, "p", None)


class _Arith:
    def __init__(self, p):
        self.p = p

    def norm(self, c):
        if self.p is None:
            return Fraction(c)
        if isinstance(c, Fraction):
            return c.numerator * pow(c.denominator, -1, self.p) % self.p
        return int(c) % self.p

    def inv(self, c):
        return 1 / c if self.p is None else pow(c, -1, self.p)

    def reduce(self, c):
        return c if self.p is None else c % self.p


def doubled(terms: dict, n: int, arith: _Arith) -> dict:
    """x^a with negative entries mapped to y^(-a): exponent vectors of length 2n."""
    out = {}
    for a, c in terms.items():
        e = tuple(max(v, 0) for v in a) + tuple(max(-v, 0) for v in a)
        e = (sum(e),) + e
        out[e] = arith.reduce(out.get(e, 0) + arith.norm(c))
    return {e: c for e, c in out.items() if c}


# monomials are (total degree, exponents...), so tuple order is graded lex

def _deg(e):
    return e[0]


def _mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _monomials_of_degree(nv, d):
    for combo in combinations_with_replacement(range(nv), d):
        e = [0] * nv
        for v in combo:
            e[v] += 1
        yield (d,) + tuple(e)


class TruncatedIdealSpan:
    """Echelon basis (distinct leading monomials) of the degree-D truncation."""

    def __init__(self, laurent_terms: Sequence[dict], nvars: int, p=None):
        self.n = nvars
        self.nv = 2 * nvars
        self.arith = _Arith(p)
        gens = [doubled(t, nvars, self.arith) for t in laurent_terms]
        for i in range(nvars):
            e = [0] * self.nv
            e[i] = 1
            e[nvars + i] = 1
            gens.append({(2,) + tuple(e): self.arith.norm(1),
                         (0,) * (self.nv + 1): self.arith.norm(-1)})
        self.gens = [g for g in gens if g]
        self.pivots: dict = {}
        self.D = -1
        self.history: dict = {}

    def _reduce(self, row: dict) -> dict:
        a = self.arith
        while row:
            lead = max(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return row
            c = row[lead]
            for e, v in prow.items():
                w = a.reduce(row.get(e, 0) - c * v)
                if w:
                    row[e] = w
                else:
                    row.pop(e, None)
        return row

    def _insert(self, row: dict):
        row = self._reduce(dict(row))
        if row:
            lead = max(row)
            inv = self.arith.inv(row[lead])
            self.pivots[lead] = {e: self.arith.reduce(v * inv) for e, v in row.items()}

    def raise_to(self, D: int):
        """Add every product m*g of degree D' for D' up to D."""
        for d in range(self.D + 1, D + 1):
            for g in self.gens:
                dg = max(_deg(e) for e in g)
                if dg > d:
                    continue
                for m in _monomials_of_degree(self.nv, d - dg):
                    self._insert({_mul(m, e): c for e, c in g.items()})
            self.D = d
            self.history[d] = self.sub_degree_dims()

    def quotient_dim_at(self, d: int) -> int:
        """dim of degree-<=d polynomials modulo the span's degree-<=d part.

        With graded leading monomials that part is spanned by the pivots of
        degree <= d.  The top sub-degree d = D is always inflated, since
        reducing x^D needs products of degree D + 1.
        """
        total = comb(d + self.nv, self.nv)
        return total - sum(1 for e in self.pivots if _deg(e) <= d)

    def sub_degree_dims(self) -> tuple:
        return tuple(self.quotient_dim_at(d) for d in range(self.D + 1))

    def contains(self, terms: dict) -> bool:
        return not self._reduce(dict(terms))


def _stable(history: dict, D: int):
    """Value of the first run of WINDOW equal sub-degrees below D.

    Near the top the truncation inflates the count (reducing x^D needs
    products of degree above D), so only a plateau strictly under D counts.
    """
    dims = history.get(D)
    if dims is None:
        return None
    for d in range(0, D - WINDOW + 1):
        if len(set(dims[d:d + WINDOW])) == 1:
            return dims[d]
    return None


def _terms_and_field(F_input):
    terms = [dict(f.terms) for f in F_input]
    return terms, F_input[0].nvars, _modulus(F_input[0].field)


def _max_degree(terms, n):
    return max(sum(abs(v) for v in a) for t in terms for a in t)


def oracle_span(F_input, D: int) -> TruncatedIdealSpan:
    terms, n, p = _terms_and_field(F_input)
    span = TruncatedIdealSpan(terms, n, p)
    span.raise_to(D)
    return span


def oracle_quotient_dim(F_input, D: int, span: TruncatedIdealSpan | None = None):
    """Stabilised dim of (polys of degree <= D') / (truncated ideal) or Unstable.

    Degrees are walked upward from the largest input degree; the answer is
    the first value shared by the three sub-degrees just below the current
    truncation degree.
    """
    terms, n, p = _terms_and_field(F_input)
    span = span or TruncatedIdealSpan(terms, n, p)
    start = _max_degree(terms, n)
    for d in range(start, D + 1):
        span.raise_to(d)
        v = _stable(span.history, d)
        if v is not None:
            return v
    return Unstable(tuple((d, v[-1]) for d, v in sorted(span.history.items())))


def oracle_membership(F_input, poly, D: int, span: TruncatedIdealSpan | None = None):
    """True once the doubled image of poly lies in some truncation of degree
    <= D; False if it never does and the quotient has stabilised; else Unstable."""
    terms, n, p = _terms_and_field(F_input)
    span = span or TruncatedIdealSpan(terms, n, p)
    target = doubled(dict(poly.terms), n, span.arith)
    if not target:
        return True
    start = max(_max_degree(terms, n), max(_deg(e) for e in target))
    stable = False
    for d in range(min(start, D), D + 1):
        span.raise_to(d)
        if d >= max(_deg(e) for e in target) and span.contains(target):
            return True
        stable = _stable(span.history, d) is not None
    if stable:
        return False
    return Unstable(tuple((d, v[-1]) for d, v in sorted(span.history.items())))
