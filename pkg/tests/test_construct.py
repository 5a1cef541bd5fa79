import pytest

from thompsonf.construct import (
    DEF_NAMES,
    Params,
    big_X,
    build_generators,
    g0,
    lower_defs,
    second_block,
    std_w,
    std_x,
    std_y,
    std_z,
    the_defs,
)
from thompsonf.dyadic import Dyadic
from thompsonf.plmap import Interval, agree_on, compose, evaluate, invert, support, slope_at
from thompsonf.words import MARKING, X_ALPHABET, parse, word_to_map


def test_params():
    p = Params(5, 20)
    assert (p.n, p.i, p.u, p.xi) == (7, 7, 40, 42)
    for bad in [(1, 20), (5, 22), (5, 16)]:
        with pytest.raises(ValueError):
            Params(*bad)


def test_named_elements():
    assert std_w(0) == compose(std_x(0), invert(std_x(1)))
    assert std_y(1) == compose(compose(std_x(1) ** 2, invert(std_x(2))), invert(std_x(1)))
    assert std_z(0) == compose(compose(std_x(0) ** 3, invert(std_x(1))), std_x(0) ** -2)
    with pytest.raises(ValueError):
        std_x(-1)


def test_second_block_fixed_points():
    f = second_block(20)
    half = Dyadic(1, 1)
    for fixed in (20, 22, 24):
        assert evaluate(f, fixed) == fixed
    # attracting at 20 and 24, repelling at 22
    assert abs(evaluate(f, 20 + half) - 20) < half
    assert abs(evaluate(f, 22 + half) - 22) > half
    assert [str(c) for c in support(f)] == [str(Interval.open(20, 22)), str(Interval.open(22, 24))]


@pytest.mark.parametrize("m, b", [(2, 20), (5, 20), (6, 24)])
def test_generators(m, b):
    p = Params(m, b)
    gens = build_generators(p)
    assert agree_on(gens.X0, std_x(0), Interval.closed(0, b - 2))
    assert agree_on(gens.X0, g0(p), Interval.closed(b, p.u))
    assert agree_on(gens.X1, std_x(1), Interval.closed(0, b - 1))
    assert evaluate(gens.X0, p.xi) == p.xi
    assert slope_at(gens.X0, p.xi, "right") == 4
    assert gens.X0.tail_offset == 1 and gens.X1.tail_offset == 1


def test_big_X():
    assert str(big_X(2)) == "a^-1 b a"
    p = Params()
    gens = build_generators(p)
    # below the blocks, capital X_i acts as x_i
    for i in range(2, 6):
        f = word_to_map(big_X(i), gens.assignment)
        assert agree_on(f, std_x(i), Interval.closed(0, 10))


def test_defs_shapes():
    p = Params(5, 20)
    caps, lows = the_defs(p), lower_defs(p)
    assert set(caps) == set(DEF_NAMES)
    for name in DEF_NAMES:
        assert caps[name].alphabet == MARKING
        assert lows[name].alphabet == X_ALPHABET
        assert caps[name].is_reduced()
        assert len(caps[name]) == len(lows[name])
    assert caps["C"] == parse("a^2 b^2 a^-2 b^-2")


def test_generator_json():
    data = build_generators(Params()).to_json()
    assert data["params"]["m"] == 5
    assert data["X0"]["tail_offset"] == 1
    assert data["words"]["C"] == "a^2 b^2 a^-2 b^-2"
