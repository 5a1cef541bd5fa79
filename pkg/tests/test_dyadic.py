from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thompsonf.dyadic import Dyadic, compare

dyadics = st.builds(Dyadic, st.integers(-10**6, 10**6), st.integers(0, 30))


def test_canonical_form():
    assert Dyadic(6, 2) == Dyadic(3, 1)
    assert Dyadic(6, 2).exponent == 1
    assert Dyadic(8, 3).exponent == 0
    assert str(Dyadic(8, 3)) == "1"
    assert str(Dyadic(3, 2)) == "3/2^2"
    assert Dyadic(3, 2).pretty() == "3/4"


@pytest.mark.parametrize("text, value", [
    ("7", Fraction(7)),
    ("-3/8", Fraction(-3, 8)),
    ("5/2^3", Fraction(5, 8)),
    ("12/16", Fraction(3, 4)),
])
def test_parse(text, value):
    assert Dyadic.parse(text).to_fraction() == value


@pytest.mark.parametrize("bad", ["1/3", "1/6", "x", "1/2^-1", ""])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        Dyadic.parse(bad)


@given(dyadics)
def test_string_round_trip(d):
    assert Dyadic.parse(str(d)) == d


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb
    assert compare(a, b) == (fa > fb) - (fa < fb)
    assert (a < b) == (fa < fb)


@given(dyadics, st.integers(-20, 20))
def test_mul_pow2(a, k):
    assert a.mul_pow2(k).to_fraction() == a.to_fraction() * Fraction(2) ** k


def test_mixed_comparisons_and_hash():
    assert Dyadic(1, 1) == Fraction(1, 2)
    assert Dyadic(4, 0) == 4
    assert Dyadic(1, 1) < 1
    assert hash(Dyadic(1, 1)) == hash(Fraction(1, 2))
    assert hash(Dyadic(4, 0)) == hash(4)


def test_coerce():
    assert Dyadic.coerce(Fraction(3, 8)) == Dyadic(3, 3)
    assert Dyadic.coerce("1/2") == Dyadic(1, 1)
    with pytest.raises(ValueError):
        Dyadic.coerce(Fraction(1, 3))
