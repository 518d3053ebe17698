"""Monomial sets built from cones, and the finite set operations on them.

``((m))`` is the cone of monomial multiples of ``m`` that stay in the
same sign-quadrant, i.e. every coordinate moves away from zero.  A
:class:`MonomialRegion` is a union of cones each with some cones carved
out of it; it may be infinite and is only ever materialised through
:func:`truncate`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable

from .errors import IterationBoundExceeded, WouldEmptyRegion
from .laurent import Monomial, delta, indices, mono_key, one, shift


def in_cone(m: Monomial, apex: Monomial) -> bool:
    """m in ((apex))."""
    for a, b in zip(m, apex):
        if b > 0:
            if a < b:
                return False
        elif b < 0:
            if a > b:
                return False
    return True


def cones_meet(a: Monomial, b: Monomial) -> bool:
    return all(x * y >= 0 for x, y in zip(a, b))


def outward_steps(m: Monomial) -> list[int]:
    """Indices i with delta(x_i m) = delta(m) + 1."""
    steps = []
    for k, a in enumerate(m, start=1):
        if a >= 0:
            steps.append(k)
        if a <= 0:
            steps.append(-k)
    return steps


def cone_points(apex: Monomial, d: int) -> list[Monomial]:
    """All members of ((apex)) of degree <= d."""
    budget = d - delta(apex)
    if budget < 0:
        return []
    out = []

    def rec(k, prefix, left):
        if k == len(apex):
            out.append(tuple(prefix))
            return
        a = apex[k]
        for t in range(left + 1):
            if a > 0:
                vals = (a + t,)
            elif a < 0:
                vals = (a - t,)
            else:
                vals = (t, -t) if t else (0,)
            for v in vals:
                prefix.append(v)
                rec(k + 1, prefix, left - t)
                prefix.pop()

    rec(0, [], budget)
    return out


@dataclass(frozen=True)
class Component:
    apex: Monomial
    carved: tuple = ()

    def __contains__(self, m: Monomial) -> bool:
        return in_cone(m, self.apex) and not any(in_cone(m, c) for c in self.carved)


@dataclass(frozen=True)
class MonomialRegion:
    nvars: int
    components: tuple = field(default=())

    @classmethod
    def full(cls, n: int) -> "MonomialRegion":
        return cls(n, (Component(one(n)),))

    def __contains__(self, m: Monomial) -> bool:
        return contains(self, m)

    def to_json(self) -> list:
        return [{"apex": list(c.apex), "carved": [list(x) for x in c.carved]}
                for c in self.components]

    @classmethod
    def from_json(cls, n: int, data: list) -> "MonomialRegion":
        return cls(n, tuple(Component(tuple(c["apex"]), tuple(tuple(x) for x in c["carved"]))
                            for c in data))


def contains(B: MonomialRegion, m: Monomial) -> bool:
    return any(m in comp for comp in B.components)


@lru_cache(maxsize=4096)
def truncate(B: MonomialRegion, d: int) -> tuple:
    """{m in B : delta(m) <= d}, sorted by the package total order."""
    if d < 0:
        raise ValueError("truncation degree must be nonnegative")
    seen = set()
    for comp in B.components:
        for m in cone_points(comp.apex, d):
            if m not in seen and not any(in_cone(m, c) for c in comp.carved):
                seen.add(m)
    return tuple(sorted(seen, key=mono_key))


def remove_cone(B: MonomialRegion, m: Monomial) -> MonomialRegion:
    """B minus ((m))."""
    m = tuple(m)
    if delta(m) == 0:
        raise WouldEmptyRegion("removing ((1)) would empty the region")
    comps = []
    for comp in B.components:
        if cones_meet(comp.apex, m) and not any(in_cone(m, c) for c in comp.carved):
            comp = Component(comp.apex, comp.carved + (m,))
        comps.append(comp)
    return MonomialRegion(B.nvars, tuple(comps))


def add_monomial(B: MonomialRegion, m: Monomial) -> MonomialRegion:
    """B plus the single monomial m, stored as ((m)) carved at its outward neighbours."""
    m = tuple(m)
    if contains(B, m):
        return B
    carved = tuple(shift(m, i) for i in outward_steps(m))
    return MonomialRegion(B.nvars, B.components + (Component(m, carved),))


def ball(n: int, k: int) -> tuple:
    return truncate(MonomialRegion.full(n), k)


def ball_size(n: int, k: int) -> int:
    """Lattice points of the cross-polytope of radius k in dimension n."""
    return sum(2 ** j * comb(n, j) * comb(k, j) for j in range(min(n, k) + 1))


def _nvars(S, n):
    if n is not None:
        return n
    for m in S:
        return len(m)
    raise ValueError("cannot infer the variable count of an empty set")


def prolong(S: Iterable[Monomial], n: int | None = None) -> set:
    """S union x_i S for every i in [-n, n]*."""
    S = set(S)
    if not S:
        return set()
    n = _nvars(S, n)
    out = set(S)
    for m in S:
        for i in indices(n):
            out.add(shift(m, i))
    return out


def border(S: Iterable[Monomial], n: int | None = None) -> set:
    S = set(S)
    return prolong(S, n) - S


def is_connected_to_one(S: Iterable[Monomial]) -> bool:
    S = set(S)
    if not S:
        return False
    n = _nvars(S, None)
    if one(n) not in S:
        return False
    for m in S:
        d = delta(m)
        if d == 0:
            continue
        if not any(shift(m, -i) in S and delta(shift(m, -i)) < d
                   for i in indices(n)):
            return False
    return True


def delta_B(S: Iterable[Monomial], m: Monomial, bound: int = 64) -> int:
    """Least k with m in S^[k] (k-fold prolongation of the finite set S).

    S^[k] is the set of s*u with s in S and delta(u) <= k, so the answer is
    the L1 distance from m to S.
    """
    S = S if isinstance(S, (set, frozenset)) else set(S)
    if m in S:
        return 0
    best = min((sum(abs(a - b) for a, b in zip(m, s)) for s in S), default=None)
    if best is None or best > bound:
        raise IterationBoundExceeded(f"{m} not reached within {bound} prolongations")
    return best
