"""Exact dyadic rationals ``a / 2**e``."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

__all__ = ["Dyadic", "add", "mul_pow2", "compare", "as_dyadic"]

_TEXT = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(?:2\^(\d+)|(\d+)))?\s*$")


@total_ordering
class Dyadic:
    """A dyadic rational stored as ``numerator / 2**exponent``.

    The representation is canonical: either ``exponent == 0`` or the
    numerator is odd, so equal values have identical fields.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        elif exponent and not numerator & 1:
            if numerator == 0:
                exponent = 0
            else:
                tz = (numerator & -numerator).bit_length() - 1
                k = min(tz, exponent)
                numerator >>= k
                exponent -= k
        self.numerator = numerator
        self.exponent = exponent

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Dyadic")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Parse ``INT``, ``INT/POW2`` or ``INT/2^UINT``."""
        mt = _TEXT.match(text)
        if mt is None:
            raise ValueError(f"not a dyadic literal: {text!r}")
        num, exp, den = mt.groups()
        if exp is not None:
            return cls(int(num), int(exp))
        if den is not None:
            d = int(den)
            if d <= 0 or d & (d - 1):
                raise ValueError(f"denominator {d} is not a power of two")
            return cls(int(num), d.bit_length() - 1)
        return cls(int(num))

    # -- conversions -------------------------------------------------------

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __float__(self) -> float:
        return self.numerator / (1 << self.exponent)

    def is_integer(self) -> bool:
        return self.exponent == 0

    def floor(self) -> int:
        return self.numerator >> self.exponent

    def scaled(self, e: int) -> int:
        """Numerator over ``2**e``; ``e`` must be at least ``self.exponent``."""
        return self.numerator << (e - self.exponent)

    def __str__(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self) -> str:
        return f"Dyadic({self.numerator}, {self.exponent})"

    def pretty(self) -> str:
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/{1 << self.exponent}"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic(other)
        e = max(self.exponent, other.exponent)
        return Dyadic(self.scaled(e) + other.scaled(e), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.numerator, self.exponent)

    def __sub__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic(other)
        e = max(self.exponent, other.exponent)
        return Dyadic(self.scaled(e) - other.scaled(e), e)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic(other)
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __abs__(self):
        return Dyadic(abs(self.numerator), self.exponent)

    def mul_pow2(self, k: int) -> "Dyadic":
        return Dyadic(self.numerator, self.exponent - k)

    # -- ordering ----------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, Dyadic):
            e = max(self.exponent, other.exponent)
            a, b = self.scaled(e), other.scaled(e)
        elif isinstance(other, int):
            a, b = self.numerator, other << self.exponent
        elif isinstance(other, Fraction):
            a = self.numerator * other.denominator
            b = other.numerator << self.exponent
        else:
            raise TypeError
        return (a > b) - (a < b)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self.exponent == 0:
            return hash(self.numerator)
        return hash(self.to_fraction())


def as_dyadic(value) -> Dyadic:
    return Dyadic.coerce(value)


def add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def mul_pow2(a: Dyadic, k: int) -> Dyadic:
    return a.mul_pow2(k)


def compare(a: Dyadic, b: Dyadic) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    return a._cmp(b)
