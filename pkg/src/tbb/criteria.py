"""Border-basis tests: commuting/inverse multiplication operators versus
prolongation and commutation polynomials projecting to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import DegreeTooSmall
from .laurent import LaurentPoly, delta, indices, mono_key, one, shift
from .linalg import build_matrix, echelon
from .parsing import format_poly
from .projection import Projection, mult_operator, project
from .region import ball


@dataclass
class CriterionReport:
    condition1_ok: bool | None = None
    condition3_ok: bool | None = None
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.condition1_ok is not False and self.condition3_ok is not False

    def to_json(self) -> dict:
        return {
            "condition1_ok": self.condition1_ok,
            "condition3_ok": self.condition3_ok,
            "witnesses": [{"source": w["source"], "residue": format_poly(w["residue"])}
                          for w in self.witnesses],
        }


def restrict(pi: Projection, d: int) -> Projection:
    """The projection cut down to degree d (B_{<=d} and F_{<=d})."""
    return Projection(pi.nvars, pi.field, d, [m for m in pi.basis if delta(m) <= d],
                      {h: t for h, t in pi.rules.items() if delta(h) <= d}, check=False)


def _low_rules(pi: Projection):
    return [(h, pi.rule_poly(h)) for h in pi.heads() if delta(h) <= pi.degree - 1]


def _in_domain(pi: Projection, p: LaurentPoly) -> bool:
    return all(pi.in_domain(m) for m in p.terms)


def prolongation_polys(pi: Projection) -> list:
    """(x_i f, ("x", i, head)) for f in F_{<=d-1} with x_i f inside <B^x>_{<=d}."""
    out = []
    for h, f in _low_rules(pi):
        for i in indices(pi.nvars):
            r = f.shift(i)
            if _in_domain(pi, r):
                out.append((r, ("x", i, list(h))))
    return out


def commutation_polys(pi: Projection) -> list:
    """x_i f - x_j f' for rules whose shifted heads coincide, inside <B^x>_{<=d}."""
    groups: dict = {}
    for h, f in _low_rules(pi):
        for i in indices(pi.nvars):
            groups.setdefault(shift(h, i), []).append((i, h, f))
    out = []
    for key in sorted(groups, key=mono_key):
        for (i, h, f), (j, h2, f2) in combinations(groups[key], 2):
            if h == h2:
                continue
            r = f.shift(i) - f2.shift(j)
            if _in_domain(pi, r):
                out.append((r, ("xx", i, list(h), j, list(h2))))
    return out


def check_condition3(pi: Projection) -> CriterionReport:
    """Every prolongation/commutation polynomial of F_{<=d-1} projects to 0."""
    witnesses = []
    for r, src in prolongation_polys(pi) + commutation_polys(pi):
        res = project(pi, r)
        if res.terms:
            witnesses.append({"source": src, "residue": res})
    return CriterionReport(condition3_ok=not witnesses, witnesses=witnesses)


def check_condition1(pi: Projection, pairs: str = "all") -> CriterionReport:
    """X_i X_{-i} = Id and X_i X_j = X_j X_i on <B>_{<=d-2}.

    ``pairs="all"`` tests commutation for every i != j in [-n,n]*;
    ``"positive"`` only for 1 <= i < j <= n.  In a truncated family the
    negative pairs are not implied by the positive ones plus inversion:
    a degree-d rule reached only through X_{-i} X_{-j} escapes the
    positive test while its prolongation still fails to reduce.
    """
    if pairs not in ("all", "positive"):
        raise ValueError(f"unknown pair set {pairs!r}")
    d = pi.degree
    if d < 2:
        raise DegreeTooSmall("the operator conditions need d >= 2")
    n = pi.nvars
    f = pi.field
    if pairs == "all":
        comm = [(a, b) for a in indices(n) for b in indices(n) if a < b and a != -b]
    else:
        comm = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    witnesses = []
    for m in sorted((b for b in pi.basis if delta(b) <= d - 2), key=mono_key):
        mp = LaurentPoly({m: f.one}, n, f)
        img = {i: mult_operator(pi, i, mp) for i in indices(n)}
        for i in range(1, n + 1):
            for a, b in ((i, -i), (-i, i)):
                r = mult_operator(pi, a, img[b]) - mp
                if r.terms:
                    witnesses.append({"source": ("inverse", a, b, list(m)), "residue": r})
        for a, b in comm:
            r = mult_operator(pi, a, img[b]) - mult_operator(pi, b, img[a])
            if r.terms:
                witnesses.append({"source": ("commute", a, b, list(m)), "residue": r})
    return CriterionReport(condition1_ok=not witnesses, witnesses=witnesses)


def check_all(pi: Projection) -> CriterionReport:
    c1 = check_condition1(pi)
    c3 = check_condition3(pi)
    return CriterionReport(c1.condition1_ok, c3.condition3_ok, c1.witnesses + c3.witnesses)


def ideal_truncation(pi: Projection, d: int | None = None) -> list:
    """{m f : f in F, delta(m f) <= d} as polynomials."""
    d = pi.degree if d is None else d
    n = pi.nvars
    out = []
    for h in pi.heads():
        f = pi.rule_poly(h)
        for m in ball(n, d + f.degree()):
            g = f.mul_monomial(m)
            if g.degree() <= d:
                out.append(g)
    return out


def direct_sum_check(pi: Projection, d: int | None = None) -> tuple[bool, dict]:
    """dim <Ball(d)> == |B_{<=d}| + rank <F>_{<=d}."""
    d = pi.degree if d is None else d
    n = pi.nvars
    cols = list(reversed(ball(n, d)))
    rows = ideal_truncation(pi, d)
    r = echelon(build_matrix(rows, cols, field=pi.field, nvars=n)).rank if rows else 0
    nb = sum(1 for m in pi.basis if delta(m) <= d)
    info = {"ball": len(cols), "basis": nb, "rank": r}
    return len(cols) == nb + r and one(n) in pi.basis, info
