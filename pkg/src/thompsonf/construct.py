"""Concrete elements: standard generators, building blocks, and the modified pair X0, X1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .dyadic import Dyadic
from .plmap import (
    Interval,
    PLMap,
    agree_on,
    compose,
    conjugate_by_translation,
    evaluate,
    invert,
    slope_at,
)
from .words import MARKING, X_ALPHABET, Letter, Word, reduce

__all__ = [
    "Params",
    "GeneratorSet",
    "ConstructionError",
    "std_x",
    "std_y",
    "std_z",
    "std_w",
    "second_block",
    "g0",
    "g1",
    "build_X0",
    "build_generators",
    "big_X",
    "the_defs",
    "lower_defs",
    "DEF_NAMES",
]

DEF_NAMES = ("C", "S", "T", "Sigma", "Theta", "Z", "W", "P", "Q", "H", "K")


class ConstructionError(AssertionError):
    """A transcribed breakpoint table contradicts a stated property."""


@dataclass(frozen=True)
class Params:
    """Construction parameters: ``m`` period-4 blocks starting at ``b``."""

    m: int = 5
    b: int = 20

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if self.b % 4 or self.b < 20:
            raise ValueError("b must be a multiple of 4 and at least 20")

    @property
    def n(self) -> int:
        return 2 * self.m - 3

    @property
    def i(self) -> int:
        return self.m + 2

    @property
    def u(self) -> int:
        return self.b + 4 * self.m

    @property
    def xi(self) -> int:
        return self.b + 4 * self.m + 2

    def to_json(self) -> dict:
        return {"m": self.m, "b": self.b, "n": self.n, "i": self.i, "u": self.u, "xi": self.xi}


@lru_cache(maxsize=None)
def std_x(i: int) -> PLMap:
    if i < 0:
        raise ValueError("generator index must be non-negative")
    if i == 0:
        return PLMap([(0, 0), (1, 2)], 1)
    return PLMap([(0, 0), (i, i), (i + 1, i + 2)], 1)


@lru_cache(maxsize=None)
def std_y(i: int) -> PLMap:
    xi, xn = std_x(i), std_x(i + 1)
    return compose(compose(compose(xi, xi), invert(xn)), invert(xi))


@lru_cache(maxsize=None)
def std_z(i: int) -> PLMap:
    xi, xn = std_x(i), std_x(i + 1)
    return compose(compose(xi ** 3, invert(xn)), xi ** -2)


@lru_cache(maxsize=None)
def std_w(i: int) -> PLMap:
    return compose(std_x(i), invert(std_x(i + 1)))


@lru_cache(maxsize=None)
def second_block(offset: int) -> PLMap:
    """``w_o^-2 w_{o+2}^2``: attracting at offset and offset+4, repelling at offset+2."""
    if offset < 0:
        raise ValueError("offset must be non-negative")
    return compose(std_w(offset) ** -2, std_w(offset + 2) ** 2)


def g0(p: Params) -> PLMap:
    f = PLMap()
    for k in range(p.m):
        f = compose(f, second_block(p.b + 4 * k))
    return f


def g1(p: Params) -> PLMap:
    return conjugate_by_translation(g0(p), 1)


_Q = Fraction(1, 4)


def _x0_table(p: Params) -> list:
    b, u, xi = p.b, p.u, p.xi
    F = Fraction
    pts = [
        (0, 0),
        (1, 2),
        (b - F(3, 2), b - F(1, 2)),
        (b - 1, b - F(1, 4)),
        (b, b),
    ]
    for k in range(p.m):
        o = b + 4 * k
        pts += [
            (o + 1, o + F(1, 4)),
            (o + F(3, 2), o + F(1, 2)),
            (o + F(7, 4), o + 1),
            (o + 2, o + 2),
            (o + F(9, 4), o + 3),
            (o + F(5, 2), o + F(7, 2)),
            (o + 3, o + F(15, 4)),
            (o + 4, o + 4),
        ]
    pts += [
        (u + 1, u + F(1, 4)),
        (u + F(3, 2), u + F(1, 2)),
        (u + F(7, 4), u + 1),
        (xi, xi),
        (xi + F(1, 4), xi + 1),
        (xi + F(1, 2), xi + F(3, 2)),
    ]
    return [(Dyadic.coerce(F(x)), Dyadic.coerce(F(y))) for x, y in pts]


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionError(what)


@lru_cache(maxsize=None)
def build_X0(p: Params) -> PLMap:
    """x0 below b-2, the block chain g0 with modified ends, then x0 again."""
    X0 = PLMap(_x0_table(p), 1)
    b, u, xi = p.b, p.u, p.xi
    x0 = std_x(0)
    _require(agree_on(X0, x0, Interval.closed(0, b - 2)), "X0 agrees with x0 on [0, b-2]")
    _require(agree_on(X0, g0(p), Interval.closed(b, u)), "X0 agrees with g0 on [b, b+4m]")
    _require(evaluate(X0, b - 2) == b - 1, "X0 translates by 1 at b-2")
    _require(agree_on(X0, x0, Interval.open(u + 3)), "X0 is t+1 on [b+4m+3, inf)")
    _require(evaluate(X0, xi) == xi and slope_at(X0, xi, "right") == 4, "xi is a repelling fixed point")
    _require(all(evaluate(X0, xi + Dyadic(k, 4)) != xi + Dyadic(k, 4) for k in range(1, 200)),
             "no fixed point right of xi")
    return X0


@dataclass(frozen=True)
class GeneratorSet:
    X0: PLMap
    X1: PLMap
    params: Params
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def assignment(self) -> dict:
        return {0: self.X0, 1: self.X1}

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "X0": self.X0.to_json(),
            "X1": self.X1.to_json(),
            "words": {name: str(w) for name, w in the_defs(self.params).items()},
        }


@lru_cache(maxsize=None)
def build_generators(p: Params) -> GeneratorSet:
    X0 = build_X0(p)
    X1 = conjugate_by_translation(X0, 1)
    _require(agree_on(X1, std_x(1), Interval.closed(0, p.b - 1)), "X1 agrees with x1 on [0, b-1]")
    return GeneratorSet(X0, X1, p)


def _gen(j: int, e: int = 1) -> Word:
    return Word((Letter(j, 1 if e > 0 else -1),) * abs(e), MARKING)


def big_X(i: int) -> Word:
    """``X_i = X_0^(1-i) X_1 X_0^(i-1)`` over the marking alphabet."""
    if i < 2:
        raise ValueError("big_X is defined for i >= 2")
    return _gen(0, 1 - i) * _gen(1) * _gen(0, i - 1)


def _X(j: int, e: int = 1) -> Word:
    base = _gen(j) if j < 2 else big_X(j)
    return base ** e


@lru_cache(maxsize=None)
def _defs(i: int) -> dict:
    C = reduce(_X(0, 2) * _X(1, 2) * _X(0, -2) * _X(1, -2))
    S = reduce(_X(0) * _X(2) * _X(1, -2))
    T = reduce(_X(0, 2) * _X(2) * _X(4) * _X(3, -2) * _X(1, -1) * _X(0, -1))
    Sigma = reduce(C ** -i * S * C ** i)
    Theta = reduce(C ** -i * T * C ** i)
    Z = reduce(S * Sigma * S.inverse() * Sigma.inverse())
    W = reduce(T * Theta * T.inverse() * Theta.inverse())
    P = reduce(Z.inverse() * W)
    Q = reduce(_X(1, -1) * P * _X(1) * P.inverse())
    H = reduce(_X(1, -2) * Q * _X(1, 2))
    K = reduce(_X(1) * H * _X(1, -1))
    return dict(C=C, S=S, T=T, Sigma=Sigma, Theta=Theta, Z=Z, W=W, P=P, Q=Q, H=H, K=K)


def the_defs(p: Params) -> dict:
    """Capital words over {X0, X1}; the conjugation power is ``i = m + 2``."""
    return dict(_defs(p.i))


def lower_defs(p: Params) -> dict:
    """The same words read over {x0, x1}."""
    return {name: w.with_alphabet(X_ALPHABET) for name, w in _defs(p.i).items()}
