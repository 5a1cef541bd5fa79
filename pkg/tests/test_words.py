import pytest

from thompsonf.construct import std_x
from thompsonf.plmap import compose, invert
from thompsonf.words import (
    MARKING,
    X_ALPHABET,
    Letter,
    ParseError,
    Word,
    enumerate_reduced,
    parse,
    reduce,
    word_to_map,
)


def test_parse_and_print():
    w = parse("x0^2 x1^-1 x3")
    assert w.alphabet == X_ALPHABET
    assert len(w) == 4
    assert str(w) == "x0^2 x1^-1 x3"
    m = parse("a b^-2 a")
    assert m.alphabet == MARKING
    assert str(m) == "a b^-2 a"
    assert len(parse("")) == 0


@pytest.mark.parametrize("bad", ["x0 a", "x-1", "y2", "x0^", "a^x", "x0^99999"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse(bad)


def test_reduce_and_inverse():
    w = parse("a b b^-1 a^-1 b")
    assert not w.is_reduced()
    assert reduce(w) == parse("b")
    assert len(reduce(w * w.inverse())) == 0
    assert parse("a b^-1").inverse() == parse("b a^-1")


def test_syllables():
    assert list(parse("a^2 b^-1 a").syllables()) == [(0, 2), (1, -1), (0, 1)]


@pytest.mark.parametrize("L", range(0, 11))
def test_ball_counts(L):
    n = sum(1 for _ in enumerate_reduced(2, L))
    assert n == 2 * 3 ** L - 1


def test_enumeration_order_and_filters():
    words = list(enumerate_reduced(2, 1))
    assert [str(w) for w in words] == ["", "a", "a^-1", "b", "b^-1"]
    first_b = list(enumerate_reduced(2, 3, first=Letter(1, 1), min_len=1))
    assert all(w.letters[0] == Letter(1, 1) for w in first_b)
    assert len(first_b) == 1 + 3 + 9
    assert all(w.is_reduced() for w in enumerate_reduced(2, 5))


def test_word_to_map():
    w = parse("x1 x0^-1")
    assert word_to_map(w, {0: std_x(0), 1: std_x(1)}) == compose(std_x(1), invert(std_x(0)))
    with pytest.raises(KeyError):
        word_to_map(parse("x2"), {0: std_x(0)})


def test_alphabet_switch():
    w = parse("a b^-1")
    assert w.with_alphabet(X_ALPHABET) == Word.of([(0, 1), (1, -1)], X_ALPHABET)
