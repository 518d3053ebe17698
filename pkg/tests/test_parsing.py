from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tbb.errors import PolynomialSyntaxError, ZeroPolynomialLine
from tbb.fields import GF
from tbb.laurent import LaurentPoly
from tbb.parsing import format_monomial, format_poly, parse_poly, parse_system


def test_negative_exponents_and_fractions():
    p = parse_poly("x1^-2*x2 - 3/4")
    assert p.terms == {(-2, 1): Fraction(1), (0, 0): Fraction(-3, 4)}
    assert format_poly(p) == "x1^-2*x2 - 3/4"


def test_variable_count_from_system():
    polys = parse_system("x1 - 1\nx3 + x2\n")
    assert [p.nvars for p in polys] == [3, 3]


def test_comments_and_blank_lines():
    assert len(parse_system("# header\n\nx1 - 2  # linear\n\n")) == 1


def test_syntax_error_position():
    with pytest.raises(PolynomialSyntaxError) as e:
        parse_poly("x1 +* 2")
    assert (e.value.line, e.value.column) == (1, 5)


def test_zero_line_reported():
    with pytest.raises(ZeroPolynomialLine) as e:
        parse_system("x1\nx1 - x1\n")
    assert e.value.line == 2


def test_coefficients_reduce_mod_p():
    p = parse_poly("32004*x1 + 1/2", field=GF(32003))
    assert p.coeff((1,)) == 1
    assert p.coeff((0,)) == 16002


def test_monomial_rendering():
    assert format_monomial((0, 0)) == ""
    assert format_monomial((1, -1)) == "x1*x2^-1"


polys = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
                        st.fractions(max_denominator=9).filter(lambda c: c != 0),
                        min_size=1, max_size=6)


@given(polys)
def test_format_parse_round_trip(terms):
    p = LaurentPoly.from_terms(terms, 2)
    assert parse_poly(format_poly(p), nvars=2) == p
