"""Degree-stratified completion of a Laurent system to a border basis.

The state carries a monomial region ``B``, rewriting rules for the
border monomials up to the working degree ``k`` and the input
polynomials that have not been absorbed yet.  Each turn prolongs the
rules to degree ``k + 1``, row-reduces the prolongations, extends the
rules (or enlarges ``B`` where the rank falls short), projects the
commutation polynomials and pending inputs, and carves ``B`` wherever a
relation among ``B`` monomials turns up.  Relations of degree ``<= k``
send the loop back down to their degree.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .criteria import CriterionReport, check_condition1, check_condition3, restrict
from .errors import NoInput, ZeroPolynomial
from .fields import QQ
from .laurent import ChoiceFunction, LaurentPoly, Monomial, delta, indices, mono_key, shift
from .linalg import build_matrix, dump_matrix_market, echelon
from .projection import Projection, mult_operator, project, sigma
from .region import (MonomialRegion, add_monomial, border, contains, prolong, remove_cone,
                     truncate)

log = logging.getLogger(__name__)

BORDER_BASIS = "border_basis"
UNIT_IDEAL = "unit_ideal"
ABORTED = "aborted"


class _UnitIdeal(Exception):
    pass


@dataclass
class SolverConfig:
    field: object = QQ
    choice: str = "macaulay"
    max_degree: int | None = None
    max_turns: int = 20000
    dump_matrices: bool = False


@dataclass
class SolverResult:
    outcome: str
    nvars: int
    field: object
    reason: str | None = None
    region: MonomialRegion | None = None
    basis: tuple = ()
    projection: Projection | None = None
    degree: int = 0
    certificate: CriterionReport = dc_field(default_factory=CriterionReport)
    trace: list = dc_field(default_factory=list)
    matrices: list = dc_field(default_factory=list)

    @property
    def rules(self) -> list:
        return self.projection.rule_polys() if self.projection else []

    @property
    def quotient_dim(self) -> int | None:
        if self.outcome == BORDER_BASIS:
            return len(self.basis)
        if self.outcome == UNIT_IDEAL:
            return 0
        return None

    def max_rows(self) -> int:
        return max((t["matrix_shape"][0] for t in self.trace if "matrix_shape" in t), default=0)

    def row_sequence(self) -> list:
        return [t["matrix_shape"][0] for t in self.trace
                if "matrix_shape" in t and t["matrix_shape"][0]]


class SolverState:
    def __init__(self, inputs: Sequence[LaurentPoly], gamma: ChoiceFunction, field_):
        self.nvars = inputs[0].nvars
        self.field = field_
        self.gamma = gamma
        self.inputs = list(inputs)
        self.k = 0
        self.region = MonomialRegion.full(self.nvars)
        self.rules: dict = {}          # head -> tail
        self.pending: list = []
        self.trace: list = []
        self.matrices: list = []
        self.memo_prolong: dict = {}   # (i, head, tail) -> product degree
        self.memo_commute: dict = {}
        self.turns = 0

    # -- helpers -------------------------------------------------------
    def mono(self, m) -> LaurentPoly:
        return LaurentPoly({m: self.field.one}, self.nvars, self.field)

    def rule_poly(self, h) -> LaurentPoly:
        return self.mono(h) - self.rules[h]

    def projection(self, d: int) -> Projection:
        return Projection(self.nvars, self.field, d, truncate(self.region, d),
                          {h: t for h, t in self.rules.items() if delta(h) <= d}, check=False)

    def add_pending(self, polys):
        have = set(self.pending)
        for p in polys:
            if p.terms and p not in have:
                self.pending.append(p)
                have.add(p)

    def substitute(self, p: LaurentPoly, upto: int) -> LaurentPoly:
        """One pass of head -> tail on ruled monomials of degree <= upto."""
        f = self.field
        out: dict = {}
        for m, c in p.terms.items():
            t = self.rules.get(m) if delta(m) <= upto else None
            if t is None:
                out[m] = f.add(out.get(m, f.zero), c)
            else:
                for b, v in t.terms.items():
                    out[b] = f.add(out.get(b, f.zero), f.mul(c, v))
        return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, self.nvars, f)

    def record(self, **kw):
        kw.setdefault("k", self.k)
        kw["turn"] = self.turns
        self.trace.append(kw)


def initialize(inputs: Sequence[LaurentPoly], gamma: ChoiceFunction | str = "macaulay",
               field_=None) -> SolverState:
    if not inputs:
        raise NoInput("no input polynomials")
    for f in inputs:
        if not f.terms:
            raise ZeroPolynomial("input contains the zero polynomial")
    if isinstance(gamma, str):
        gamma = ChoiceFunction(gamma)
    field_ = field_ or inputs[0].field
    state = SolverState(inputs, gamma, field_)
    k = min(f.degree() for f in inputs)
    state.k = k
    if k == 0:
        raise _UnitIdeal()
    low = [f for f in inputs if f.degree() == k]
    state.add_pending([f for f in inputs if f.degree() > k])
    absorb_relations(state, low)
    ncols = len({m for f in low for m in f.terms})
    state.record(event="init", removed_cones=[list(h) for h in state.rules],
                 matrix_shape=[len(low), ncols], rank=len(state.rules))
    return state


def absorb_relations(state: SolverState, polys: Sequence[LaurentPoly]) -> bool:
    """Turn ideal elements supported in B into rules, carving B.

    Only the relations of least degree e are used; the others are queued.
    If e <= k the working degree drops to e and everything learnt above e
    is discarded (it is regenerated by the following turns).
    """
    polys = [p for p in polys if p.terms]
    if not polys:
        return False
    cols = sorted({m for p in polys for m in p.terms}, key=state.gamma.key, reverse=True)
    ech = echelon(build_matrix(polys, cols, field=state.field, nvars=state.nvars))
    rows = ech.rows
    if not rows:
        return False
    e = min(r.degree() for r in rows)
    if e == 0:
        raise _UnitIdeal()
    keep = [(piv, r) for piv, r in zip(ech.pivots, rows) if r.degree() == e]
    state.add_pending([r for r in rows if r.degree() > e])
    if e <= state.k:
        for h in [h for h in state.rules if delta(h) > e]:
            del state.rules[h]
        state.memo_prolong = {key: d for key, d in state.memo_prolong.items() if d <= e}
        state.memo_commute = {key: d for key, d in state.memo_commute.items() if d <= e}
        state.add_pending([f for f in state.inputs if f.degree() > e])
        state.k = e
    new = {}
    for piv, r in keep:
        if not contains(state.region, piv):
            raise AssertionError(f"relation leading monomial {piv} is not in B")
        state.region = remove_cone(state.region, piv)
        new[piv] = state.mono(piv) - r
    for h, t in list(state.rules.items()):
        if any(m in new for m in t.terms):
            state.rules[h] = _subst(state, t, new)
    state.rules.update(new)
    _drop_orphans(state)
    return True


def _subst(state, t, new):
    f = state.field
    out: dict = {}
    for m, c in t.terms.items():
        if m in new:
            for b, v in new[m].terms.items():
                out[b] = f.add(out.get(b, f.zero), f.mul(c, v))
        else:
            out[m] = f.add(out.get(m, f.zero), c)
    return LaurentPoly({m: c for m, c in out.items() if c != f.zero}, state.nvars, f)


def _drop_orphans(state):
    for h in list(state.rules):
        if contains(state.region, h) or not any(
                contains(state.region, shift(h, i)) for i in indices(state.nvars)):
            del state.rules[h]


def core_loop_step(state: SolverState, config: SolverConfig | None = None) -> bool:
    """One turn at the working degree k.  Returns True if the state changed
    in a way that requires repeating the turn (k unchanged or lowered)."""
    config = config or SolverConfig()
    k = state.k
    n = state.nvars
    f = state.field
    key = state.gamma.key
    state.turns += 1
    basis = truncate(state.region, k + 1)
    bset = set(basis)
    border_all = [m for m in prolong(truncate(state.region, k + 2), n)
                  if m not in bset and delta(m) <= k + 1]
    A = bset.union(border_all)
    # a monomial added to B in degree k + 1 can expose border monomials of
    # degree <= k; they stay free columns until a prolongation covers them
    uncovered = [m for m in border_all if delta(m) <= k and m not in state.rules]

    # prolongation polynomials
    # one product per shifted head; the other products with the same
    # shifted head are commutation pairs and are projected further down
    c1 = []
    targets = set()
    for h in sorted(state.rules, key=mono_key):
        t = state.rules[h]
        fpoly = None
        for i in indices(n):
            mk = (i, h, t)
            if mk in state.memo_prolong:
                targets.add(shift(h, i))
                continue
            fpoly = fpoly or state.rule_poly(h)
            r = fpoly.shift(i)
            if all(m in A for m in r.terms):
                state.memo_prolong[mk] = r.degree()
                if shift(h, i) not in targets:
                    targets.add(shift(h, i))
                    c1.append(r)
    reduced = [state.substitute(r, k + 1) for r in c1]
    free = sorted((m for m in border_all if m not in state.rules), key=key, reverse=True)
    cols = free + sorted(basis, key=key, reverse=True)
    M = build_matrix(reduced, cols, field=f, nvars=n)
    if config.dump_matrices:
        state.matrices.append(dump_matrix_market(M))
    ech = echelon(M)
    free_set = set(free)
    rule_rows = [(p, r) for p, r in zip(ech.pivots, ech.rows) if p in free_set]
    rel_rows = [r for p, r in zip(ech.pivots, ech.rows) if p not in free_set]
    rec = dict(c1=len(c1), matrix_shape=list(M.shape), rank=ech.rank,
               added_to_B=[], removed_cones=[], c2=0)
    if uncovered:
        rec["uncovered"] = [list(m) for m in uncovered]

    if any(r.degree() <= k for r in rel_rows):
        absorb_relations(state, rel_rows)
        rec.update(event="drop", new_k=state.k,
                   removed_cones=[list(r_piv) for r_piv in _leading(state, rel_rows)])
        state.record(k=k, **rec)
        return True

    pivots = {p for p, _ in rule_rows}
    for p, r in rule_rows:
        state.rules[p] = state.mono(p) - r
    deficient = [m for m in free if m not in pivots]
    for m in deficient:
        state.region = add_monomial(state.region, m)
    rec["added_to_B"] = [list(m) for m in deficient]
    changed = False
    if rel_rows:
        rec["removed_cones"] += [list(m) for m in _leading(state, rel_rows)]
        absorb_relations(state, rel_rows)
        changed = True

    # commutation polynomials and pending inputs, projected in degree k + 1
    pi = state.projection(k + 1)
    residues = []
    groups: dict = {}
    for h in state.rules:
        if delta(h) <= k + 1:
            for i in indices(n):
                groups.setdefault(shift(h, i), []).append((i, h))
    ncand = 0
    for gk in sorted(groups, key=mono_key):
        for (i, h), (j, h2) in combinations(groups[gk], 2):
            mk = (i, h, state.rules[h], j, h2, state.rules[h2])
            if mk in state.memo_commute:
                continue
            r = state.rule_poly(h).shift(i) - state.rule_poly(h2).shift(j)
            if not all(pi.in_domain(m) for m in r.terms):
                continue
            state.memo_commute[mk] = r.degree() if r.terms else 0
            ncand += 1
            res = project(pi, r)
            if res.terms:
                residues.append(res)
    still = []
    for p in state.pending:
        if p.degree() <= k + 1:
            ncand += 1
            if all(pi.in_domain(m) for m in p.terms):
                res = project(pi, p)
            else:
                res = sigma(pi, p)
            if res.terms:
                residues.append(res)
        else:
            still.append(p)
    state.pending = still
    rec["c2"] = ncand
    if residues:
        before = state.k
        lead = _leading(state, residues)
        absorb_relations(state, residues)
        rec["removed_cones"] += [list(m) for m in lead]
        rec["event"] = "drop" if state.k < before else "carve"
        rec["new_k"] = state.k
        state.record(k=k, **rec)
        return True
    if changed:
        rec.update(event="carve", new_k=state.k)
        state.record(k=k, **rec)
        return True
    state.k = k + 1
    rec.update(event="raise", new_k=state.k)
    state.record(k=k, **rec)
    return False


def _leading(state, polys):
    cols = sorted({m for p in polys for m in p.terms}, key=state.gamma.key, reverse=True)
    ech = echelon(build_matrix(list(polys), cols, field=state.field, nvars=state.nvars))
    return ech.pivots


def default_max_degree(inputs: Sequence[LaurentPoly]) -> int:
    """4 * product over variables of the exponent range of the input supports."""
    n = inputs[0].nvars
    bound = 1
    for k in range(n):
        vals = [m[k] for p in inputs for m in p.terms]
        bound *= max(max(vals) - min(vals), 1)
    return 4 * bound


def _finished(state: SolverState):
    """Return the final projection if B is finite and fully ruled, else None."""
    if state.pending:
        return None
    top = truncate(state.region, state.k)
    if any(delta(m) == state.k for m in top):
        return None
    basis = top
    d = max(delta(m) for m in basis) + 2
    bset = set(basis)
    if any(m not in state.rules for m in border(basis, state.nvars)):
        return None
    rules = {h: t for h, t in state.rules.items() if h not in bset}
    return Projection(state.nvars, state.field, d, basis, rules, check=False)


def run(inputs: Sequence[LaurentPoly], gamma: ChoiceFunction | str = "macaulay",
        config: SolverConfig | None = None) -> SolverResult:
    config = config or SolverConfig()
    if isinstance(gamma, str):
        gamma = ChoiceFunction(gamma)
    if not inputs:
        raise NoInput("no input polynomials")
    field_ = config.field
    n = inputs[0].nvars
    inputs = [LaurentPoly.from_terms(p.terms, n, field_) for p in inputs]
    if any(not p.terms for p in inputs):
        raise ZeroPolynomial("input is zero over the chosen field")
    ceiling = config.max_degree or default_max_degree(inputs)
    state = None
    try:
        state = initialize(inputs, gamma, field_)
        while True:
            if state.k >= ceiling:
                return _aborted(state, n, field_, f"DegreeCeiling (k reached {state.k})")
            if state.turns >= config.max_turns:
                return _aborted(state, n, field_, "TurnLimit")
            if core_loop_step(state, config):
                continue
            pi = _finished(state)
            if pi is None:
                continue
            rep3 = check_condition3(pi)
            if not rep3.condition3_ok:
                state.record(event="recheck", residues=len(rep3.witnesses))
                absorb_relations(state, [w["residue"] for w in rep3.witnesses])
                continue
            # B is finite, so the normal form extends to any degree
            wide = restrict(pi, max([pi.degree] + [p.degree() for p in inputs]))
            leftovers = [sigma(wide, p) for p in inputs]
            if any(r.terms for r in leftovers):
                state.record(event="inputs")
                absorb_relations(state, leftovers)
                continue
            rep1 = check_condition1(pi)
            cert = CriterionReport(rep1.condition1_ok, rep3.condition3_ok,
                                   rep1.witnesses + rep3.witnesses)
            if not rep1.condition1_ok:
                return _aborted(state, n, field_, "CertificateFailure", cert)
            return SolverResult(BORDER_BASIS, n, field_, None, state.region,
                                tuple(sorted(pi.basis, key=mono_key)), pi, pi.degree, cert,
                                state.trace, state.matrices)
    except _UnitIdeal:
        trace = state.trace if state else []
        return SolverResult(UNIT_IDEAL, n, field_, None, None, (), None, 0,
                            CriterionReport(), trace, state.matrices if state else [])


def _aborted(state, n, field_, reason, cert=None):
    return SolverResult(ABORTED, n, field_, reason, state.region, (), None, state.k,
                        cert or CriterionReport(), state.trace, state.matrices)


def multiplication_matrices(result: SolverResult) -> dict:
    """{i: matrix of X_i on the basis B} for every i in [-n, n]*.

    Column c holds the coordinates of X_i(B[c]).
    """
    from .errors import InfiniteQuotient
    if result.outcome != BORDER_BASIS:
        raise InfiniteQuotient("multiplication matrices need a finite basis")
    pi = result.projection
    B = list(result.basis)
    pos = {m: r for r, m in enumerate(B)}
    f = pi.field
    out = {}
    for i in indices(pi.nvars):
        mat = [[f.zero] * len(B) for _ in B]
        for c, b in enumerate(B):
            img = mult_operator(pi, i, LaurentPoly({b: f.one}, pi.nvars, f))
            for m, v in img.terms.items():
                mat[pos[m]][c] = v
        out[i] = mat
    return out
