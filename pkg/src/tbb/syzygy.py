"""First syzygies of a border basis.

Elements of the free module S1 are finite sums ``c * m1 * Y_i[m2]`` with
``m2`` in B; ``Y_i[m2]`` is zero when ``x_i m2`` lies in B, so every
stored slot points at a rule.  ``boundary`` sends ``Y_i[m2]`` to the rule
with head ``x_i m2``.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Sequence

from .errors import BadIndices, NotInB, ReductionBound
from .laurent import (LaurentPoly, Monomial, canonical_factorization, delta, indices,
                      mono_div, mono_key, mono_mul, one, shift, var)
from .projection import Projection, mult_operator


class SyzygyElement:
    """Sparse element of S1 keyed by (multiplier, slot, base)."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: dict, field):
        self.terms = {k: c for k, c in terms.items() if c != field.zero}
        self.field = field

    @classmethod
    def zero(cls, field) -> "SyzygyElement":
        return cls({}, field)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "SyzygyElement") -> "SyzygyElement":
        f = self.field
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = f.add(out.get(k, f.zero), c)
        return SyzygyElement(out, f)

    def __neg__(self) -> "SyzygyElement":
        return SyzygyElement({k: self.field.neg(c) for k, c in self.terms.items()}, self.field)

    def __sub__(self, other: "SyzygyElement") -> "SyzygyElement":
        return self + (-other)

    def scale(self, c) -> "SyzygyElement":
        f = self.field
        return SyzygyElement({k: f.mul(c, v) for k, v in self.terms.items()}, f)

    def times(self, m: Monomial) -> "SyzygyElement":
        """Multiply every multiplier by the monomial m."""
        return SyzygyElement({(mono_mul(m, m1), i, m2): c
                              for (m1, i, m2), c in self.terms.items()}, self.field)

    def __eq__(self, other) -> bool:
        return isinstance(other, SyzygyElement) and self.terms == other.terms

    def __repr__(self) -> str:
        return f"SyzygyElement({len(self.terms)} terms)"

    def degree(self) -> int:
        return max((delta(m1) for m1, _, _ in self.terms), default=-1)

    def to_json(self) -> list:
        return [{"coeff": self.field.format(c), "multiplier": list(m1), "slot": i, "base": list(m2)}
                for (m1, i, m2), c in sorted(self.terms.items(),
                                             key=lambda t: (mono_key(t[0][0]), t[0][1],
                                                            mono_key(t[0][2])))]


def Y(pi: Projection, i: int, v: LaurentPoly, multiplier: Monomial | None = None,
      coeff=None) -> SyzygyElement:
    """coeff * multiplier * Y_i[v], extended linearly over v in <B>."""
    f = pi.field
    multiplier = one(pi.nvars) if multiplier is None else multiplier
    coeff = f.one if coeff is None else coeff
    out = {}
    for m, c in v.terms.items():
        if m not in pi.basis:
            raise NotInB(f"{m} is not in B")
        if shift(m, i) in pi.basis:
            continue
        out[(multiplier, i, m)] = f.mul(coeff, c)
    return SyzygyElement(out, f)


def _mono(pi, m):
    return LaurentPoly({m: pi.field.one}, pi.nvars, pi.field)


def _as_poly(pi, m):
    return m if isinstance(m, LaurentPoly) else _mono(pi, tuple(m))


def psi(pi: Projection, i: int, m: Monomial) -> LaurentPoly:
    """x_i m - project(x_i m)."""
    if m not in pi.basis:
        raise NotInB(f"{m} is not in B")
    xm = shift(m, i)
    if xm in pi.basis:
        return LaurentPoly.zero(pi.nvars, pi.field)
    return _mono(pi, xm) - mult_operator(pi, i, _mono(pi, m))


def boundary(pi: Projection, s: SyzygyElement) -> LaurentPoly:
    f = pi.field
    out: dict = {}
    for (m1, i, m2), c in s.terms.items():
        for m, v in psi(pi, i, m2).terms.items():
            key = mono_mul(m1, m)
            out[key] = f.add(out.get(key, f.zero), f.mul(c, v))
    return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, pi.nvars, f)


def make_phi(pi: Projection, i: int, j: int, m) -> SyzygyElement:
    """x_i Y_j[m] - x_j Y_i[m] - Y_j[X_i m] + Y_i[X_j m]."""
    if i == j:
        raise BadIndices("phi needs two distinct indices")
    n = pi.nvars
    v = _as_poly(pi, m)
    xi, xj = var(i, n), var(j, n)
    return (Y(pi, j, v, xi) - Y(pi, i, v, xj)
            - Y(pi, j, mult_operator(pi, i, v)) + Y(pi, i, mult_operator(pi, j, v)))


def make_rho(pi: Projection, i: int, m) -> SyzygyElement:
    """x_i Y_{-i}[m] + Y_i[X_{-i} m]."""
    v = _as_poly(pi, m)
    return Y(pi, -i, v, var(i, pi.nvars)) + Y(pi, i, mult_operator(pi, -i, v))


def _chain(pi, seq):
    """X_{s_1} o ... o X_{s_k}(1)."""
    v = _mono(pi, one(pi.nvars))
    for i in reversed(seq):
        v = mult_operator(pi, i, v)
    return v


def _prefix(n, seq):
    m = one(n)
    for i in seq:
        m = shift(m, i)
    return m


def make_Psi(pi: Projection, seq: Sequence[int]) -> SyzygyElement:
    """Sum over l of x_{i_1}...x_{i_{l-1}} Y_{i_l}[X_{i_{l+1}} o ... o X_{i_k}(1)].

    Its boundary is m - X_{i_1} o ... o X_{i_k}(1) for m the product.
    """
    n = pi.nvars
    out = SyzygyElement.zero(pi.field)
    inner = _mono(pi, one(n))
    prefixes = [one(n)]
    for i in seq:
        prefixes.append(shift(prefixes[-1], i))
    for pos in range(len(seq) - 1, -1, -1):
        i = seq[pos]
        out = out + Y(pi, i, inner, prefixes[pos])
        inner = mult_operator(pi, i, inner)
    return out


# -- generator sets ---------------------------------------------------------

def all_generators(pi: Projection, d: int | None = None) -> list:
    """Nonzero phi_{i,j}(m) (i < j) and rho_i(m) for m in B_{<=d-2}."""
    d = pi.degree if d is None else d
    idx = indices(pi.nvars)
    out = []
    for m in sorted((b for b in pi.basis if delta(b) <= d - 2), key=mono_key):
        for a in idx:
            for b in idx:
                if a < b:
                    g = make_phi(pi, a, b, m)
                    if not g.is_zero():
                        out.append((("phi", a, b, m), g))
            g = make_rho(pi, a, m)
            if not g.is_zero():
                out.append((("rho", a, m), g))
    return out


# -- reduction to the canonical decomposition -------------------------------

class _Paths:
    """Shortest paths from 1 inside the finite set B, as index sequences."""

    def __init__(self, pi: Projection):
        n = pi.nvars
        start = one(n)
        self.seq = {start: ()}
        queue = deque([start])
        while queue:
            m = queue.popleft()
            for i in indices(n):
                x = shift(m, i)
                if x in pi.basis and x not in self.seq:
                    # X_i applied last, so it is the outermost index
                    self.seq[x] = (i,) + self.seq[m]
                    queue.append(x)

    def __call__(self, m):
        try:
            return self.seq[m]
        except KeyError:
            raise NotInB(f"{m} is not reachable from 1 inside B") from None


def canonical_decomposition(pi: Projection, m: Monomial):
    """(i', m1', m2') with m = m1' x_i' m2', m2' in B, x_i' m2' not in B and
    delta(m1') = delta_B(m) - 1, lexicographically least in (i', m1').
    None when m is in B."""
    if m in pi.basis:
        return None
    dist = {b: sum(abs(a - c) for a, c in zip(m, b)) for b in pi.basis}
    D = min(dist.values())
    best = None
    for b, e in dist.items():
        if e != D:
            continue
        for i in indices(pi.nvars):
            xb = shift(b, i)
            if xb in pi.basis:
                continue
            m1 = mono_div(m, xb)
            if delta(m1) != D - 1:
                continue
            key = (i, mono_key(m1))
            if best is None or key < best[0]:
                best = (key, (i, m1, b))
    return best[1]


def _sort_moves(pi, seq):
    """Adjacent swaps and inverse-pair contractions taking seq to the
    canonical factorisation of its product.

    Each move is (P, kind, a, b, R) with Psi_before - Psi_after equal to
    P * phi_{a,b}(R) or P * rho_a(R).
    """
    n = pi.nvars
    seq = list(seq)
    moves = []
    rank = lambda i: (abs(i), i)
    while True:
        for p in range(len(seq) - 1):
            a, b = seq[p], seq[p + 1]
            if a == -b:
                moves.append((_prefix(n, seq[:p]), "rho", a, None, _chain(pi, seq[p + 2:])))
                del seq[p:p + 2]
                break
            if rank(a) > rank(b):
                moves.append((_prefix(n, seq[:p]), "phi", a, b, _chain(pi, seq[p + 2:])))
                seq[p], seq[p + 1] = b, a
                break
        else:
            return moves


def _moves_element(pi, moves, sign):
    f = pi.field
    out = []
    for P, kind, a, b, R in moves:
        for m, c in R.terms.items():
            out.append({"coeff": f.mul(sign, c), "multiplier": P, "kind": kind,
                        "indices": (a, b) if kind == "phi" else (a,), "base": m})
    return out


def generator_element(pi: Projection, g: dict) -> SyzygyElement:
    """coeff * multiplier * phi/rho(base) for one trail entry."""
    if g["kind"] == "phi":
        e = make_phi(pi, g["indices"][0], g["indices"][1], g["base"])
    else:
        e = make_rho(pi, g["indices"][0], g["base"])
    return e.times(g["multiplier"]).scale(g["coeff"])


def trail_sum(pi: Projection, trail: Iterable[dict]) -> SyzygyElement:
    out = SyzygyElement.zero(pi.field)
    for g in trail:
        out = out + generator_element(pi, g)
    return out


def is_canonical(pi: Projection, key) -> bool:
    m1, i, m2 = key
    m = mono_mul(m1, shift(m2, i))
    dec = canonical_decomposition(pi, m)
    return dec is not None and dec[0] == i and dec[1] == m1


def reduce_to_canonical(pi: Projection, s: SyzygyElement, max_steps: int | None = None):
    """Rewrite s modulo the phi/rho submodule into canonical terms.

    Returns (canonical, trail) with s == canonical + sum of the trail
    multiples (see :func:`trail_sum`).  For s in the kernel of the
    boundary map the canonical part is zero.
    """
    f = pi.field
    n = pi.nvars
    paths = _Paths(pi)
    work = dict(s.terms)
    trail: list = []
    top = max((delta(m1) for m1, _, _ in work), default=0)
    if max_steps is None:
        max_steps = max(len(work), 1) * (top + 1) ** 2 * max(len(pi.basis), 1) * 2 * n
    canon_cache: dict = {}
    steps = 0
    while True:
        todo = [k for k in work if not _canon(pi, k, canon_cache)]
        if not todo:
            break
        key = max(todo, key=lambda k: (delta(k[0]), mono_key(k[0]), k[1], mono_key(k[2])))
        steps += 1
        if steps > max_steps:
            raise ReductionBound(f"no canonical form after {max_steps} rewrites")
        lam = work[key]
        m1, i, m2 = key
        m = mono_mul(m1, shift(m2, i))
        I = canonical_factorization(m1) + (i,) + paths(m2)
        dec = canonical_decomposition(pi, m)
        if dec is None:
            J = paths(m)
        else:
            i2, m1c, m2c = dec
            J = canonical_factorization(m1c) + (i2,) + paths(m2c)
        # work += lam * (Psi_J - Psi_I); the trail keeps lam * (Psi_I - Psi_J)
        delta_el = (make_Psi(pi, J) - make_Psi(pi, I)).scale(lam)
        for k, c in delta_el.terms.items():
            v = f.add(work.get(k, f.zero), c)
            if v == f.zero:
                work.pop(k, None)
            else:
                work[k] = v
        trail += _moves_element(pi, _sort_moves(pi, I), lam)
        trail += _moves_element(pi, _sort_moves(pi, J), f.neg(lam))
    return SyzygyElement(work, f), trail


def _canon(pi, key, cache):
    hit = cache.get(key)
    if hit is None:
        hit = cache[key] = is_canonical(pi, key)
    return hit


def kernel_vectors(pi: Projection, max_multiplier_degree: int = 1) -> list:
    """A basis of the boundary kernel on the terms m1 Y_i[m2] with
    delta(m1) <= max_multiplier_degree, by exact linear algebra."""
    from .linalg import build_matrix, nullspace
    from .region import ball
    n = pi.nvars
    f = pi.field
    keys = []
    for m2 in sorted(pi.basis, key=mono_key):
        for i in indices(n):
            if shift(m2, i) not in pi.basis:
                for m1 in ball(n, max_multiplier_degree):
                    keys.append((m1, i, m2))
    images = [boundary(pi, SyzygyElement({k: f.one}, f)) for k in keys]
    cols = sorted({m for p in images for m in p.terms}, key=mono_key)
    M = build_matrix(images, cols, field=f, nvars=n)
    out = []
    for v in nullspace(M):
        out.append(SyzygyElement({k: c for k, c in zip(keys, v) if c != f.zero}, f))
    return out
