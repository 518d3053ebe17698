import random

import pytest
from hypothesis import given, settings, strategies as st

from systems import generic_diamond, solved, text_system
from tbb.criteria import restrict
from tbb.errors import BadIndices, NotInB
from tbb.fields import QQ
from tbb.laurent import canonical_factorization, delta, one
from tbb.parsing import parse_poly
from tbb.projection import Projection, sigma_monomial
from tbb.region import ball
from tbb.syzygy import (SyzygyElement, Y, all_generators, boundary, canonical_decomposition,
                        kernel_vectors, make_phi, make_Psi, make_rho, psi, reduce_to_canonical,
                        trail_sum)


def linear():
    """B = {1} for x1 - 2."""
    return Projection(1, QQ, 3, [(0,)], {(1,): parse_poly("2"), (-1,): parse_poly("1/2")})


def point2():
    rules = {(1, 0): "2", (-1, 0): "1/2", (0, 1): "3", (0, -1): "1/3"}
    return Projection(2, QQ, 3, [(0, 0)], {h: parse_poly(t, nvars=2) for h, t in rules.items()})


@pytest.fixture(scope="module")
def diamond():
    return solved(generic_diamond(3)).projection


def test_psi_is_the_rule():
    assert psi(linear(), 1, (0,)) == parse_poly("x1 - 2")
    B = Projection(1, QQ, 2, [(0,), (1,)], {(2,): parse_poly("3*x1 - 2"), (-1,): parse_poly("3/2 - 1/2*x1")})
    assert psi(B, 1, (0,)).is_zero()
    with pytest.raises(NotInB):
        psi(B, 1, (2,))


def test_zero_convention():
    B = Projection(1, QQ, 2, [(0,), (1,)], {(2,): parse_poly("3*x1 - 2"), (-1,): parse_poly("3/2 - 1/2*x1")})
    assert Y(B, 1, parse_poly("1")).is_zero()
    assert not Y(B, 1, parse_poly("x1")).is_zero()


def test_rho_for_a_single_root():
    r = make_rho(linear(), 1, (0,))
    assert r.terms == {((1,), -1, (0,)): 1, ((0,), 1, (0,)): QQ("1/2")}
    assert boundary(linear(), r).is_zero()


def test_phi_for_a_point():
    pi = point2()
    g = make_phi(pi, 1, 2, (0, 0))
    assert g.terms == {((1, 0), 2, (0, 0)): 1, ((0, 1), 1, (0, 0)): -1,
                       ((0, 0), 2, (0, 0)): -2, ((0, 0), 1, (0, 0)): 3}
    assert boundary(pi, g).is_zero()
    with pytest.raises(BadIndices):
        make_phi(pi, 1, 1, (0, 0))


def test_every_rule_is_some_psi(diamond):
    found = {psi(diamond, i, m) for m in diamond.basis for i in (1, -1, 2, -2)}
    assert set(diamond.rule_polys()) <= found


def test_generators_are_syzygies(diamond):
    gens = all_generators(diamond)
    assert gens
    for _, g in gens:
        assert boundary(diamond, g).is_zero()


def test_psi_base_case():
    pi = linear()
    assert make_Psi(pi, (1,)) == Y(pi, 1, parse_poly("1"))


def test_monomial_splits_into_normal_form_and_boundary(diamond):
    pi = restrict(diamond, diamond.degree + 2)
    n = pi.nvars
    for m in ball(n, 6):
        p = parse_poly("1", nvars=n, field=pi.field).mul_monomial(m)
        rhs = sigma_monomial(pi, m) + boundary(pi, make_Psi(pi, canonical_factorization(m)))
        assert rhs == p


def test_canonical_decomposition_reaches_basis(diamond):
    for m in ball(2, 5):
        dec = canonical_decomposition(diamond, m)
        if m in diamond.basis:
            assert dec is None
            continue
        i, m1, m2 = dec
        assert m2 in diamond.basis
        assert delta(m1) == min(delta(tuple(a - b for a, b in zip(m, c))) for c in diamond.basis) - 1


def test_canonical_term_is_left_alone(diamond):
    m = (3, 0)
    i, m1, m2 = canonical_decomposition(diamond, m)
    s = SyzygyElement({(m1, i, m2): diamond.field(5)}, diamond.field)
    canon, trail = reduce_to_canonical(diamond, s)
    assert canon == s
    assert trail == []


def test_psi_difference_reduces_with_trail(diamond):
    pi = restrict(diamond, diamond.degree + 2)
    diff = make_Psi(pi, (1, 2, -1, 1)) - make_Psi(pi, (1, 1, -1, 2))
    assert boundary(pi, diff).is_zero()
    canon, trail = reduce_to_canonical(pi, diff)
    assert canon.is_zero()
    assert trail_sum(pi, trail) == diff


def test_kernel_vectors_reduce_to_zero(diamond):
    vecs = kernel_vectors(diamond, 1)
    assert vecs
    for s in random.Random(3).sample(vecs, min(10, len(vecs))):
        assert boundary(diamond, s).is_zero()
        canon, trail = reduce_to_canonical(diamond, s)
        assert canon.is_zero()
        assert trail_sum(diamond, trail) == s


def test_json_shape():
    js = make_rho(linear(), 1, (0,)).to_json()
    assert {t["slot"] for t in js} == {1, -1}
    assert all(set(t) == {"coeff", "multiplier", "slot", "base"} for t in js)


def test_univariate_generators():
    pi = solved(text_system("quadratic-1")).projection
    for _, g in all_generators(pi):
        assert boundary(pi, g).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=5))
def test_any_two_factorizations_differ_by_generators(seq):
    pi = point2()
    pi = Projection(2, QQ, 7, pi.basis, pi.rules)
    m = one(2)
    for i in seq:
        m = tuple(a + (1 if abs(i) == k + 1 and i > 0 else -1 if abs(i) == k + 1 else 0)
                  for k, a in enumerate(m))
    diff = make_Psi(pi, tuple(seq)) - make_Psi(pi, canonical_factorization(m))
    assert boundary(pi, diff).is_zero()
    canon, trail = reduce_to_canonical(pi, diff)
    assert canon.is_zero()
    assert trail_sum(pi, trail) == diff
