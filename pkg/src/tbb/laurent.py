"""Laurent monomials, Laurent polynomials and choice functions.

A monomial is a tuple of signed ints (its exponent vector).  Variable
indices follow the convention ``x_{-i} = 1/x_i``: an index is a nonzero
int in ``[-n, n]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Tuple

from .errors import ZeroPolynomial
from .fields import QQ

Monomial = Tuple[int, ...]


def one(n: int) -> Monomial:
    return (0,) * n


def delta(m: Monomial) -> int:
    """L1 degree of a monomial."""
    return sum(abs(a) for a in m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_inv(a: Monomial) -> Monomial:
    return tuple(-x for x in a)


def var(i: int, n: int) -> Monomial:
    """Exponent vector of x_i, where x_{-i} is the inverse of x_i."""
    if i == 0 or abs(i) > n:
        raise ValueError(f"variable index {i} outside [-{n},{n}]*")
    e = [0] * n
    e[abs(i) - 1] = 1 if i > 0 else -1
    return tuple(e)


def shift(m: Monomial, i: int) -> Monomial:
    """x_i * m."""
    k = abs(i) - 1
    return m[:k] + (m[k] + (1 if i > 0 else -1),) + m[k + 1:]


def indices(n: int) -> list[int]:
    """[-n, n]* in increasing integer order."""
    return [i for i in range(-n, n + 1) if i]


def canonical_factorization(m: Monomial) -> tuple[int, ...]:
    """Indices (i_1..i_k) with |i_1| <= ... <= |i_k| and x_{i_1}...x_{i_k} = m."""
    seq = []
    for k, a in enumerate(m, start=1):
        seq.extend([k if a > 0 else -k] * abs(a))
    return tuple(seq)


def lex_vector(m: Monomial) -> tuple[int, ...]:
    # x1 > x1^-1 > x2 > x2^-1 > ...
    out = []
    for a in m:
        out.append(a if a > 0 else 0)
        out.append(-a if a < 0 else 0)
    return tuple(out)


def positive_lex_vector(m: Monomial) -> tuple[int, ...]:
    # x1 > x2 > ... > x1^-1 > x2^-1 > ...
    return tuple(a if a > 0 else 0 for a in m) + tuple(-a if a < 0 else 0 for a in m)


TIEBREAKS = {"signed": lex_vector, "positive": positive_lex_vector}


def mono_key(m: Monomial) -> tuple:
    """The package-wide total order on monomials (larger = preferred)."""
    return (delta(m), max((abs(a) for a in m), default=0), lex_vector(m))


def sort_monomials(monos: Iterable[Monomial], reverse: bool = False) -> list[Monomial]:
    return sorted(monos, key=mono_key, reverse=reverse)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over an exact field."""

    __slots__ = ("terms", "nvars", "field", "_hash")

    def __init__(self, terms: Dict[Monomial, object], nvars: int, field=QQ):
        # callers guarantee no zero coefficients; use from_terms otherwise
        self.terms = terms
        self.nvars = nvars
        self.field = field
        self._hash = None

    @classmethod
    def from_terms(cls, terms, nvars: int, field=QQ) -> "LaurentPoly":
        out: Dict[Monomial, object] = {}
        zero = field.zero
        for m, c in (terms.items() if isinstance(terms, dict) else terms):
            m = tuple(m)
            if len(m) != nvars:
                raise ValueError(f"monomial {m} does not have {nvars} exponents")
            c = field(c)
            if m in out:
                c = field.add(out[m], c)
            if c == zero:
                out.pop(m, None)
            else:
                out[m] = c
        return cls(out, nvars, field)

    @classmethod
    def zero(cls, nvars: int, field=QQ) -> "LaurentPoly":
        return cls({}, nvars, field)

    @classmethod
    def constant(cls, c, nvars: int, field=QQ) -> "LaurentPoly":
        return cls.from_terms({one(nvars): c}, nvars, field)

    @classmethod
    def monomial(cls, m: Monomial, nvars: int, field=QQ, coeff=None) -> "LaurentPoly":
        c = field.one if coeff is None else field(coeff)
        return cls({tuple(m): c} if c != field.zero else {}, nvars, field)

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def support(self) -> set:
        return set(self.terms)

    def coeff(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def degree(self) -> int:
        if not self.terms:
            raise ZeroPolynomial("degree of the zero polynomial")
        return max(delta(m) for m in self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "LaurentPoly"):
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        f = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = f.add(out[m], c)
                if s == f.zero:
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return LaurentPoly(out, self.nvars, f)

    def __neg__(self) -> "LaurentPoly":
        f = self.field
        return LaurentPoly({m: f.neg(c) for m, c in self.terms.items()}, self.nvars, f)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def scale(self, c) -> "LaurentPoly":
        f = self.field
        c = f(c)
        if c == f.zero:
            return LaurentPoly({}, self.nvars, f)
        return LaurentPoly({m: f.mul(a, c) for m, a in self.terms.items()}, self.nvars, f)

    def mul_monomial(self, m: Monomial, c=None) -> "LaurentPoly":
        f = self.field
        if c is None:
            return LaurentPoly({mono_mul(a, m): v for a, v in self.terms.items()},
                               self.nvars, f)
        c = f(c)
        if c == f.zero:
            return LaurentPoly({}, self.nvars, f)
        return LaurentPoly({mono_mul(a, m): f.mul(v, c) for a, v in self.terms.items()},
                           self.nvars, f)

    def shift(self, i: int) -> "LaurentPoly":
        """x_i * self."""
        return LaurentPoly({shift(a, i): v for a, v in self.terms.items()},
                           self.nvars, self.field)

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __repr__(self):
        from .parsing import format_poly
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        from .parsing import format_poly
        return format_poly(self)


def poly_mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    p._check(q)
    f = p.field
    out: Dict[Monomial, object] = {}
    for a, x in p.terms.items():
        for b, y in q.terms.items():
            m = mono_mul(a, b)
            out[m] = f.add(out.get(m, f.zero), f.mul(x, y))
    return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, p.nvars, f)


def linear_combination(pairs, nvars: int, field) -> LaurentPoly:
    """sum c_k * p_k for ``pairs`` of (coefficient, polynomial)."""
    out: Dict[Monomial, object] = {}
    f = field
    for c, p in pairs:
        for m, v in p.terms.items():
            out[m] = f.add(out.get(m, f.zero), f.mul(c, v))
    return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, nvars, f)


@dataclass(frozen=True)
class ChoiceFunction:
    """Selects an extremal monomial of a polynomial.

    ``macaulay`` prefers the highest partial degree among the extremal
    monomials; ``lexmax`` goes straight to the lexicographic tie-break.
    Remaining ties go to ``tiebreak``: ``signed`` orders the variables
    ``x1 > x1^-1 > x2 > ...``, ``positive`` orders ``x1 > x2 > ... > x1^-1``.
    """

    name: str = "macaulay"
    tiebreak: str = "signed"

    def __post_init__(self):
        if self.name not in ("macaulay", "lexmax"):
            raise ValueError(f"unknown choice function {self.name!r}")
        if self.tiebreak not in TIEBREAKS:
            raise ValueError(f"unknown tie-break {self.tiebreak!r}")

    @property
    def key(self) -> Callable[[Monomial], tuple]:
        lex = TIEBREAKS[self.tiebreak]
        if self.name == "macaulay":
            if self.tiebreak == "signed":
                return mono_key
            return lambda m: (delta(m), max((abs(a) for a in m), default=0), lex(m))
        return lambda m: (delta(m), lex(m))

    def __call__(self, f: LaurentPoly) -> Monomial:
        return choose(self, f)


def choose(gamma: ChoiceFunction, f: LaurentPoly) -> Monomial:
    if not f.terms:
        raise ZeroPolynomial("choice function applied to the zero polynomial")
    return max(f.terms, key=gamma.key)
