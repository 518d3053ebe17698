from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tbb.fields import GF, QQ, is_prime, parse_field

P = 32003


def test_rational_parsing():
    assert QQ("3/4") == Fraction(3, 4)
    assert QQ(-2) == Fraction(-2)
    assert QQ.format(QQ("-6/4")) == "-3/2"


def test_prime_field_basics():
    F = GF(7)
    assert F(-1) == 6
    assert F.inv(3) == 5
    assert F.mul(3, F.inv(3)) == 1
    assert F("1/2") == 4


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        GF(8)
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)


def test_parse_field_names():
    assert parse_field("q") == QQ
    assert parse_field(f"fp:{P}") == GF(P)
    assert parse_field(f"fp:{P}").name == f"fp:{P}"
    with pytest.raises(ValueError):
        parse_field("fp:10")


def test_is_prime():
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(P)


@given(st.integers(1, P - 1), st.integers(0, P - 1))
def test_prime_field_division_inverts_multiplication(a, b):
    F = GF(P)
    assert F.mul(F.mul(b, a), F.inv(a)) == b
