"""Rewriting families, the projection they induce, and the normal form.

A :class:`Projection` holds a finite monomial set ``B`` (already cut at
the degree bound ``d``) and one rule ``head -> tail`` per border monomial
of degree ``<= d``.  Projecting replaces every head by its tail once;
the normal form ``sigma`` composes the multiplication operators
``X_i(b) = project(x_i * b)`` along a factorisation of each monomial.
"""
from __future__ import annotations

from typing import Dict, Iterable

from .errors import DegreeBound, DuplicateHead, OutsideDomain
from .laurent import (LaurentPoly, Monomial, canonical_factorization, delta,
                      linear_combination, mono_key, one, shift)


class Projection:
    def __init__(self, nvars: int, field, degree: int, basis: Iterable[Monomial],
                 rules: Dict[Monomial, LaurentPoly], check: bool = True):
        self.nvars = nvars
        self.field = field
        self.degree = degree
        self.basis = frozenset(basis)
        self.rules = dict(rules)
        # NormalFormCache: one memo table per factorisation order
        self._sigma_cache: dict = {"canonical": {}, "reverse": {}}
        self._mult_cache: dict = {}
        if check:
            self._validate()

    def _validate(self):
        for h, t in self.rules.items():
            if h in self.basis:
                raise ValueError(f"rule head {h} lies in B")
            if delta(h) > self.degree:
                raise DegreeBound(f"rule head {h} exceeds degree {self.degree}")
            for m in t.terms:
                if m not in self.basis:
                    raise OutsideDomain(f"tail of {h} uses {m}, which is not in B")
            if t.terms and t.degree() > delta(h):
                raise DegreeBound(f"tail of {h} has larger degree than its head")

    def rule_poly(self, head: Monomial) -> LaurentPoly:
        return LaurentPoly.monomial(head, self.nvars, self.field) - self.rules[head]

    def heads(self) -> list:
        return sorted(self.rules, key=mono_key)

    def rule_polys(self) -> list:
        return [self.rule_poly(h) for h in self.heads()]

    def in_domain(self, m: Monomial) -> bool:
        return delta(m) <= self.degree and (m in self.basis or m in self.rules)

    def to_json(self) -> list:
        return [{"head": list(h),
                 "tail": [[list(m), self.field.format(c)]
                          for m, c in sorted(self.rules[h].terms.items(),
                                             key=lambda t: mono_key(t[0]), reverse=True)]}
                for h in self.heads()]


def project(pi: Projection, p: LaurentPoly) -> LaurentPoly:
    """Replace each border monomial of p by its tail."""
    f = pi.field
    out: dict = {}
    for m, c in p.terms.items():
        if delta(m) > pi.degree:
            raise OutsideDomain(f"{m} has degree above {pi.degree}")
        if m in pi.basis:
            out[m] = f.add(out.get(m, f.zero), c)
        elif m in pi.rules:
            for b, v in pi.rules[m].terms.items():
                out[b] = f.add(out.get(b, f.zero), f.mul(c, v))
        else:
            raise OutsideDomain(f"{m} is neither in B nor a rule head")
    return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, pi.nvars, f)


def _mult_monomial(pi: Projection, i: int, m: Monomial) -> LaurentPoly:
    key = (i, m)
    hit = pi._mult_cache.get(key)
    if hit is None:
        xm = shift(m, i)
        if xm in pi.basis:
            hit = LaurentPoly({xm: pi.field.one}, pi.nvars, pi.field)
        elif xm in pi.rules and delta(xm) <= pi.degree:
            hit = pi.rules[xm]
        else:
            raise OutsideDomain(f"x_{i} * {m} = {xm} is outside the domain of the projection")
        pi._mult_cache[key] = hit
    return hit


def mult_operator(pi: Projection, i: int, b: LaurentPoly) -> LaurentPoly:
    """X_i(b) = project(x_i * b) for b in <B> of degree <= d - 1."""
    if not b.terms:
        return b
    for m in b.terms:
        if m not in pi.basis:
            raise OutsideDomain(f"{m} is not in B")
    if b.degree() > pi.degree - 1:
        raise DegreeBound(f"X_{i} is only defined up to degree {pi.degree - 1}")
    return linear_combination(((c, _mult_monomial(pi, i, m)) for m, c in b.terms.items()),
                              pi.nvars, pi.field)


def _sigma_monomial(pi: Projection, m: Monomial, order: str) -> LaurentPoly:
    cache = pi._sigma_cache[order]
    hit = cache.get(m)
    if hit is not None:
        return hit
    seq = canonical_factorization(m)
    if not seq:
        if m not in pi.basis:
            raise OutsideDomain("1 is not in B")
        hit = LaurentPoly({m: pi.field.one}, pi.nvars, pi.field)
    else:
        i = seq[0] if order == "canonical" else seq[-1]
        rest = shift(m, -i)
        hit = mult_operator(pi, i, _sigma_monomial(pi, rest, order))
    cache[m] = hit
    return hit


def sigma(pi: Projection, p: LaurentPoly, order: str = "canonical") -> LaurentPoly:
    """Normal form p(X)(1).

    ``order="canonical"`` applies x_n-operators first (innermost), matching
    X_1^{a_1} o ... o X_n^{a_n}; ``"reverse"`` uses the opposite order and is
    only useful for spotting order dependence.
    """
    if not p.terms:
        return p
    if p.degree() > pi.degree:
        raise DegreeBound(f"sigma is only defined up to degree {pi.degree}")
    return linear_combination(((c, _sigma_monomial(pi, m, order)) for m, c in p.terms.items()),
                              pi.nvars, pi.field)


def sigma_monomial(pi: Projection, m: Monomial) -> LaurentPoly:
    if delta(m) > pi.degree:
        raise DegreeBound(f"sigma is only defined up to degree {pi.degree}")
    return _sigma_monomial(pi, m, "canonical")


def sigma_discrepancies(pi: Projection, monomials: Iterable[Monomial]) -> list:
    """Monomials whose normal form depends on the factorisation order."""
    bad = []
    for m in monomials:
        a = sigma_monomial(pi, m)
        b = _sigma_monomial(pi, m, "reverse")
        if a != b:
            bad.append((m, a, b))
    return bad


def extend_projection(pi: Projection, new_rules: Dict[Monomial, LaurentPoly],
                      basis: Iterable[Monomial], degree: int | None = None) -> Projection:
    """Projection one degree up keeping every old rule verbatim."""
    degree = pi.degree + 1 if degree is None else degree
    rules = dict(pi.rules)
    for h, t in new_rules.items():
        if h in rules and rules[h] != t:
            raise DuplicateHead(f"conflicting rules for {h}")
        rules[h] = t
    basis = set(basis) | set(pi.basis)
    return Projection(pi.nvars, pi.field, degree, basis, rules)


def unit_projection(nvars: int, field) -> Projection:
    """B = {1} with no rules, degree 0."""
    return Projection(nvars, field, 0, [one(nvars)], {})
