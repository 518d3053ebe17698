"""Acceptance criteria, one PASS/FAIL line each.

Lines are collected during the run and printed in the terminal summary;
running this file directly prints them as well.
"""
import random
import time

import pytest

from conftest import ACCEPTANCE_LINES, SEED
from systems import FP, corpus, generic_diamond, random_box_system, random_families, solved
from tbb.criteria import check_condition1, check_condition3, direct_sum_check, restrict
from tbb.laurent import ChoiceFunction, LaurentPoly, canonical_factorization
from tbb.oracle import Unstable, oracle_membership, oracle_quotient_dim, oracle_span
from tbb.parsing import parse_system
from tbb.projection import sigma_monomial
from tbb.region import ball
from tbb.solver import ABORTED, BORDER_BASIS, SolverConfig, multiplication_matrices, run
from tbb.syzygy import (SyzygyElement, all_generators, boundary, kernel_vectors, make_Psi,
                        reduce_to_canonical, trail_sum)

POSITIVE = ChoiceFunction("macaulay", "positive")
REFERENCE_ROWS = [2, 6, 6, 2]


def report(k, ok, detail):
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def generic_draws(count=20):
    """Seeds whose diamond system has the generic 16 roots; degenerate draws are resampled."""
    out, seed, skipped = [], SEED, []
    while len(out) < count:
        polys = generic_diamond(seed)
        if oracle_quotient_dim(polys, 14) == 16:
            out.append((seed, polys))
        else:
            skipped.append(seed)
        seed += 1
    return out, skipped


@pytest.fixture(scope="module")
def draws():
    return generic_draws()


def test_generic_system(draws):
    runs, skipped = draws
    sizes, times, signed = [], [], []
    for _, polys in runs:
        t = time.perf_counter()
        r = run(polys, POSITIVE, SolverConfig(field=FP))
        times.append(time.perf_counter() - t)
        sizes.append((r.quotient_dim, len(r.rules)))
        s = run(polys, config=SolverConfig(field=FP))
        signed.append((s.quotient_dim, len(s.rules)))
    ok = all(s == (16, 16) for s in sizes) and max(times) < 1.0
    report(1, ok, f"|B|,|F| = {sorted(set(sizes))} over {len(runs)} draws "
                  f"(resampled {len(skipped)}), max time {max(times):.3f}s; "
                  f"signed tie-break gives {sorted(set(signed))}")
    assert ok


def test_matrix_rows(draws):
    runs, _ = draws
    results = [run(polys, POSITIVE, SolverConfig(field=FP)) for _, polys in runs]
    seqs = [r.row_sequence() for r in results]
    ranks = [t["rank"] for t in results[0].trace if t.get("rank")]
    worst = max(max(s) for s in seqs)
    ok = worst <= 10
    report(2, ok, f"rows per loop {seqs[0]}, nonzero ranks {ranks} (reference sizes "
                  f"{REFERENCE_ROWS}); max rows {worst} over {len(seqs)} draws")
    assert ok


def test_certificates():
    outcomes = [solved(p) for _, p in corpus()]
    outcomes += [run(p, POSITIVE, SolverConfig(field=FP)) for p in map(generic_diamond, range(5))]
    certified = [r for r in outcomes if r.outcome == BORDER_BASIS]
    both = all(check_condition1(r.projection).condition1_ok
               and check_condition3(r.projection).condition3_ok for r in certified)
    families = random_families(SEED, 200)
    agree = literal = valid = 0
    for pi in families:
        c3 = check_condition3(pi).condition3_ok
        valid += c3
        agree += check_condition1(pi).condition1_ok == c3
        literal += check_condition1(pi, pairs="positive").condition1_ok == c3
    ok = both and agree == len(families)
    report(3, ok, f"{len(certified)} bases pass both conditions; agreement {agree}/{len(families)} "
                  f"({valid} valid families); positive-pairs-only reading agrees "
                  f"{literal}/{len(families)}")
    assert ok


def test_direct_sum():
    results = []
    for name, polys in corpus():
        r = solved(polys)
        if r.outcome == BORDER_BASIS and r.nvars <= 3 and r.quotient_dim <= 30:
            results.append((name, direct_sum_check(r.projection)[0]))
    bad = [n for n, ok in results if not ok]
    ok = not bad and len(results) == len(corpus())
    report(4, ok, f"direct sum holds on {len(results) - len(bad)}/{len(results)} corpus systems"
                  + (f"; failing {bad}" if bad else ""))
    assert ok


def _random_kernel_vectors(pi, rng, count):
    basis = kernel_vectors(pi, 1)
    f = pi.field
    out = []
    for _ in range(count if basis else 0):
        s = SyzygyElement.zero(f)
        for v in rng.sample(basis, min(3, len(basis))):
            s = s + v.scale(f(rng.randint(1, 97)))
        out.append(s)
    return out


def test_syzygies():
    rng = random.Random(SEED)
    gens = split = kernel = 0
    failures = []
    for name, polys in corpus():
        r = solved(polys)
        pi = r.projection
        for label, g in all_generators(pi):
            gens += 1
            if not boundary(pi, g).is_zero():
                failures.append((name, label))
        wide = restrict(pi, max(pi.degree, 6))
        n = pi.nvars
        pool = ball(n, 6)
        for m in rng.sample(pool, min(100, len(pool))):
            split += 1
            lhs = LaurentPoly({m: pi.field.one}, n, pi.field)
            rhs = sigma_monomial(wide, m) + boundary(wide, make_Psi(wide, canonical_factorization(m)))
            if lhs != rhs:
                failures.append((name, "split", m))
    for name, polys in corpus()[:6] + corpus()[9:11]:
        pi = solved(polys).projection
        for s in _random_kernel_vectors(pi, rng, 50 // 8 + 1):
            kernel += 1
            canon, trail = reduce_to_canonical(pi, s)
            if not canon.is_zero() or trail_sum(pi, trail) != s:
                failures.append((name, "kernel"))
    ok = not failures and kernel >= 50
    report(5, ok, f"{gens} generators with zero boundary, m = sigma(m) + boundary(Psi) "
                  f"on {split} monomials (delta <= 6), {kernel} kernel vectors reduced to 0 "
                  f"with verified trails"
                  + (f"; failures {failures[:5]}" if failures else ""))
    assert ok


def test_oracle_agreement():
    t0 = time.perf_counter()
    stabilized = matched = members = rules = 0
    mismatches = []
    for s in range(50):
        polys = random_box_system(SEED + 1000 + s)
        r = solved(polys)
        span = oracle_span(polys, 4)
        dim = oracle_quotient_dim(polys, 18, span)
        if isinstance(dim, Unstable):
            continue
        stabilized += 1
        got = r.quotient_dim if r.outcome != ABORTED else None
        if got == dim:
            matched += 1
        else:
            mismatches.append((s, got, dim))
        for p in r.rules:
            rules += 1
            members += oracle_membership(polys, p, 18, span) is True
    elapsed = time.perf_counter() - t0
    ok = stabilized >= 45 and matched == stabilized and members == rules and elapsed < 300
    report(6, ok, f"{stabilized}/50 stabilised, {matched} dimensions match, "
                  f"{members}/{rules} rules are ideal members, {elapsed:.1f}s"
                  + (f"; mismatches {mismatches}" if mismatches else ""))
    assert ok


def test_univariate():
    r = run(parse_system("x1^2 - 3*x1 + 2"))
    (a, b), (c, d) = multiplication_matrices(r)[1]
    charpoly = (-(a + d), a * d - b * c)
    lin = multiplication_matrices(run(parse_system("x1 - 2")))
    ok = (r.quotient_dim == 2 and charpoly == (-3, 2)
          and lin[1] == [[2]] and lin[-1] == [[r.field("1/2")]])
    report(7, ok, f"|B| = {r.quotient_dim}, char poly t^2 + ({charpoly[0]})t + {charpoly[1]}, "
                  f"X_1 = [[{lin[1][0][0]}]], X_-1 = [[{lin[-1][0][0]}]]")
    assert ok


def test_positive_dimensional():
    r = run(parse_system("x1 + x2 - 1"))
    ok = r.outcome == ABORTED and r.reason.startswith("DegreeCeiling")
    report(8, ok, f"outcome {r.outcome} ({r.reason})")
    assert ok


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
