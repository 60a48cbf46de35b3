from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from koszul_index.errors import ParseError
from koszul_index.scalars import QQi, TolerancePolicy, as_scalar, scalar_str

rationals = st.fractions(max_denominator=50)
gaussians = st.builds(QQi, rationals, rationals)


def test_parse_examples():
    assert QQi.parse("3/4-1/2i") == QQi(Fraction(3, 4), Fraction(-1, 2))
    assert QQi.parse("-7") == QQi(-7)
    assert QQi.parse("i") == QQi(0, 1)
    assert QQi.parse("-i") == QQi(0, -1)
    assert QQi.parse("2i") == QQi(0, 2)
    assert QQi.parse("1+i") == QQi(1, 1)
    assert QQi.parse("0") == QQi(0)


@pytest.mark.parametrize("bad", ["", "abc", "1+", "i2", "1//2", "2.5", "1 + 2"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        QQi.parse(bad)


@given(gaussians)
def test_format_round_trip(x):
    assert QQi.parse(str(x)) == x


@given(gaussians, gaussians)
def test_exact_addition_cancels(a, b):
    assert (a + b) - b == a


@given(gaussians, gaussians, gaussians)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(gaussians)
def test_division_inverts(a):
    if not a:
        return
    assert (a / a) == QQi(1)
    assert a * (QQi(1) / a) == QQi(1)


@given(gaussians)
def test_abs2_is_norm(a):
    assert a.abs2() == (a * a.conjugate()).re
    assert (a * a.conjugate()).im == 0


def test_lowest_terms_invariant():
    x = QQi(Fraction(2, 4), Fraction(-6, 9))
    assert x.re.denominator == 2 and x.re.numerator == 1
    assert x.im.denominator == 3 and x.im.numerator == -2
    assert x.re.denominator > 0 and x.im.denominator > 0


def test_as_scalar_backends():
    assert as_scalar("1/2i", "exact") == QQi(0, Fraction(1, 2))
    assert as_scalar(QQi(1, 1), "float") == 1 + 1j
    assert as_scalar(2, "exact") == QQi(2)


def test_scalar_str_exact_and_float():
    assert scalar_str(QQi(Fraction(3, 4), Fraction(-1, 2))) == "3/4-1/2i"
    assert scalar_str(1.5 + 0j) == "1.5"


def test_policy_is_explicit_value():
    default = TolerancePolicy()
    assert default.rel == 1e-9
    custom = TolerancePolicy(rel=1e-6)
    assert custom.rel == 1e-6 and default.rel == 1e-9
