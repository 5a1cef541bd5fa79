"""Elements of Thompson's group F acting on the right of [0, inf).

A map is stored as breakpoints over a common power-of-two denominator so the
hot paths (compose, evaluate) run on plain Python ints.  Products follow the
right-action convention: ``f * g`` means "apply f, then g".
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .dyadic import Dyadic

__all__ = [
    "PLMap",
    "Interval",
    "IDENTITY",
    "evaluate",
    "compose",
    "invert",
    "equals",
    "support",
    "max_displacement",
    "agree_on",
    "slope_at",
    "conjugate_by_translation",
]

Number = Union[Dyadic, Fraction]


def _rational(value: Fraction) -> Number:
    """Return a Dyadic when the rational allows it, else the Fraction."""
    den = value.denominator
    if den & (den - 1) == 0:
        return Dyadic(value.numerator, den.bit_length() - 1)
    return value


def _frac(value) -> Fraction:
    if isinstance(value, Dyadic):
        return value.to_fraction()
    return Fraction(value)


def _pow2_exp(num: int, den: int) -> Optional[int]:
    """Exponent s with num/den == 2**s, or None."""
    if num <= 0 or den <= 0:
        return None
    s = num.bit_length() - den.bit_length()
    if s >= 0:
        return s if num == den << s else None
    return s if num << -s == den else None


@dataclass(frozen=True)
class Interval:
    """An interval of [0, inf) with rational endpoints; ``hi=None`` is +inf."""

    lo: Number
    hi: Optional[Number]
    lo_open: bool = True
    hi_open: bool = True

    def __post_init__(self):
        if self.hi is not None and not _frac(self.lo) < _frac(self.hi):
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @classmethod
    def open(cls, lo, hi=None) -> "Interval":
        return cls(_coerce(lo), None if hi is None else _coerce(hi), True, True)

    @classmethod
    def closed(cls, lo, hi) -> "Interval":
        return cls(_coerce(lo), _coerce(hi), False, False)

    @property
    def bounded(self) -> bool:
        return self.hi is not None

    def contains(self, t) -> bool:
        t = _frac(t)
        lo = _frac(self.lo)
        if t < lo or (self.lo_open and t == lo):
            return False
        if self.hi is None:
            return True
        hi = _frac(self.hi)
        return t < hi or (not self.hi_open and t == hi)

    def intersect(self, other: "Interval") -> Optional["Interval"]:
        a, b = _frac(self.lo), _frac(other.lo)
        if a > b:
            lo, lo_open = self.lo, self.lo_open
        elif b > a:
            lo, lo_open = other.lo, other.lo_open
        else:
            lo, lo_open = self.lo, self.lo_open or other.lo_open
        if self.hi is None:
            hi, hi_open = other.hi, other.hi_open
        elif other.hi is None:
            hi, hi_open = self.hi, self.hi_open
        else:
            a, b = _frac(self.hi), _frac(other.hi)
            if a < b:
                hi, hi_open = self.hi, self.hi_open
            elif b < a:
                hi, hi_open = other.hi, other.hi_open
            else:
                hi, hi_open = self.hi, self.hi_open or other.hi_open
        if hi is not None:
            lf, hf = _frac(lo), _frac(hi)
            if lf >= hf:
                return None
        return Interval(lo, hi, lo_open, hi_open)

    def __str__(self) -> str:
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open or self.hi is None else "]"
        hi = "inf" if self.hi is None else _fmt(self.hi)
        return f"{left}{_fmt(self.lo)}, {hi}{right}"

    def to_json(self) -> dict:
        return {
            "lo": _fmt(self.lo),
            "hi": None if self.hi is None else _fmt(self.hi),
            "lo_open": self.lo_open,
            "hi_open": self.hi_open,
        }


def _fmt(value: Number) -> str:
    return str(value)


def _coerce(value) -> Number:
    if isinstance(value, Fraction):
        return _rational(value)
    return Dyadic.coerce(value)


class PLMap:
    """A PL homeomorphism of [0, inf) with dyadic breaks and 2**k slopes.

    Internally ``_xs[k] / 2**_e`` and ``_ys[k] / 2**_e`` are the breakpoints
    and ``_sl[k]`` is the slope exponent on ``[_xs[k], _xs[k+1]]``.  Past the
    last breakpoint the map is ``t -> t + tail``.  The representation is
    minimal, so two maps are equal iff their fields are equal.
    """

    __slots__ = ("_e", "_xs", "_ys", "_sl", "tail", "_hash")

    def __init__(self, breaks: Iterable = ((0, 0),), tail_offset: int = 0):
        pts = [(Dyadic.coerce(x), Dyadic.coerce(y)) for x, y in breaks]
        if not pts or pts[0] != (Dyadic(0), Dyadic(0)):
            raise ValueError("first breakpoint must be (0, 0)")
        e = max(max(x.exponent, y.exponent) for x, y in pts)
        xs = [x.scaled(e) for x, _ in pts]
        ys = [y.scaled(e) for _, y in pts]
        for k in range(len(xs) - 1):
            dx, dy = xs[k + 1] - xs[k], ys[k + 1] - ys[k]
            if dx <= 0 or dy <= 0:
                raise ValueError("breakpoints must be strictly increasing")
            if _pow2_exp(dy, dx) is None:
                raise ValueError(f"slope between breaks {k} and {k + 1} is not a power of two")
        tail_offset = int(tail_offset)
        if ys[-1] - xs[-1] != tail_offset << e:
            raise ValueError("last breakpoint is not continuous with the tail")
        self._set(*_canonical(e, xs, ys, tail_offset))

    def _set(self, e, xs, ys, sl, tail):
        self._e = e
        self._xs = xs
        self._ys = ys
        self._sl = sl
        self.tail = tail
        self._hash = None

    @classmethod
    def _raw(cls, e, xs, ys, tail) -> "PLMap":
        obj = cls.__new__(cls)
        obj._set(*_canonical(e, xs, ys, tail))
        return obj

    @classmethod
    def identity(cls) -> "PLMap":
        return IDENTITY

    # -- views -------------------------------------------------------------

    @property
    def breaks(self) -> list:
        e = self._e
        return [(Dyadic(x, e), Dyadic(y, e)) for x, y in zip(self._xs, self._ys)]

    @property
    def tail_offset(self) -> int:
        return self.tail

    @property
    def last_break(self) -> Dyadic:
        return Dyadic(self._xs[-1], self._e)

    def break_xs(self) -> list:
        return [Dyadic(x, self._e) for x in self._xs]

    def __len__(self) -> int:
        return len(self._xs)

    def is_identity(self) -> bool:
        return len(self._xs) == 1 and self.tail == 0

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return (
            self.tail == other.tail
            and self._e == other._e
            and self._xs == other._xs
            and self._ys == other._ys
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._e, self._xs, self._ys, self.tail))
        return self._hash

    def __repr__(self) -> str:
        pts = ", ".join(f"{x.pretty()}->{y.pretty()}" for x, y in self.breaks)
        return f"PLMap([{pts}], tail={self.tail})"

    # -- group operations --------------------------------------------------

    def __mul__(self, other: "PLMap") -> "PLMap":
        return compose(self, other)

    def __invert__(self) -> "PLMap":
        return invert(self)

    def __pow__(self, k: int) -> "PLMap":
        base = self if k >= 0 else invert(self)
        k = abs(k)
        result = IDENTITY
        while k:
            if k & 1:
                result = compose(result, base)
            k >>= 1
            if k:
                base = compose(base, base)
        return result

    def __call__(self, t) -> Dyadic:
        return evaluate(self, t)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "breaks": [[str(x), str(y)] for x, y in self.breaks],
            "tail_offset": self.tail,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PLMap":
        return cls([(x, y) for x, y in data["breaks"]], data["tail_offset"])


def _canonical(e, xs, ys, tail):
    """Drop redundant breakpoints and the common power of two."""
    nx, ny = [xs[0]], [ys[0]]
    for x, y in zip(xs[1:], ys[1:]):
        if x == nx[-1]:
            continue
        if len(nx) > 1:
            px, py = nx[-1], ny[-1]
            if (py - ny[-2]) * (x - px) == (y - py) * (px - nx[-2]):
                nx.pop()
                ny.pop()
        nx.append(x)
        ny.append(y)
    while len(nx) > 1 and ny[-1] - ny[-2] == nx[-1] - nx[-2]:
        nx.pop()
        ny.pop()
    if len(nx) == 1:
        e = 0
    elif e:
        acc = 0
        for v in nx:
            acc |= v
        for v in ny:
            acc |= v
        k = min((acc & -acc).bit_length() - 1, e)
        if k:
            nx = [v >> k for v in nx]
            ny = [v >> k for v in ny]
            e -= k
    sl = tuple(
        (ny[k + 1] - ny[k]).bit_length() - (nx[k + 1] - nx[k]).bit_length()
        for k in range(len(nx) - 1)
    )
    return e, tuple(nx), tuple(ny), sl, tail


IDENTITY = PLMap()


def _eval_sorted(xs, ys, sl, shift, pts):
    """Images of the ascending ``pts`` (scale E) under a map with breakpoints at scale E."""
    out = []
    n = len(xs)
    k = 0
    for p in pts:
        while k < n - 1 and xs[k + 1] <= p:
            k += 1
        if k == n - 1:
            out.append(p + shift)
            continue
        s = sl[k]
        d = p - xs[k]
        out.append(ys[k] + (d << s if s >= 0 else d >> -s))
    return out


def evaluate(f: PLMap, t) -> Dyadic:
    """Image of ``t`` under ``f``."""
    t = Dyadic.coerce(t)
    if t < 0:
        raise ValueError("maps act on [0, inf); got negative point")
    e = f._e
    if t.exponent > e:
        idx = bisect_right(f._xs, t.numerator >> (t.exponent - e)) - 1
    else:
        idx = bisect_right(f._xs, t.scaled(e)) - 1
    if idx == len(f._xs) - 1:
        return t + f.tail
    x0, y0 = Dyadic(f._xs[idx], e), Dyadic(f._ys[idx], e)
    return y0 + (t - x0).mul_pow2(f._sl[idx])


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The product ``fg``: apply f first, then g."""
    if len(f._xs) == 1 and f.tail == 0:
        return g
    if len(g._xs) == 1 and g.tail == 0:
        return f
    need = 0
    if f._sl:
        need = max(need, max(f._sl))
    if g._sl:
        need = max(need, -min(g._sl))
    E = max(f._e, g._e) + need
    a, b = E - f._e, E - g._e
    fx = [v << a for v in f._xs] if a else list(f._xs)
    fy = [v << a for v in f._ys] if a else list(f._ys)
    gx = [v << b for v in g._xs] if b else list(g._xs)
    gy = [v << b for v in g._ys] if b else list(g._ys)
    ft, gt = f.tail << E, g.tail << E
    # f is a homeomorphism, so preimages under f are images under its inverse.
    inv_sl = tuple(-s for s in f._sl)
    pre = _eval_sorted(fy, fx, inv_sl, -ft, gx)
    dom = sorted(set(fx).union(pre))
    mid = _eval_sorted(fx, fy, f._sl, ft, dom)
    img = _eval_sorted(gx, gy, g._sl, gt, mid)
    return PLMap._raw(E, dom, img, f.tail + g.tail)


def invert(f: PLMap) -> PLMap:
    obj = PLMap.__new__(PLMap)
    obj._set(f._e, f._ys, f._xs, tuple(-s for s in f._sl), -f.tail)
    return obj


def equals(f: PLMap, g: PLMap) -> bool:
    return f == g


def support(f: PLMap) -> list:
    """Maximal open intervals of moved points, in increasing order."""
    e = f._e
    scale = 1 << e
    xs, ys = f._xs, f._ys
    comps = []
    start = None  # Fraction where the current component began
    for k in range(len(xs) - 1):
        d0 = ys[k] - xs[k]
        d1 = ys[k + 1] - xs[k + 1]
        x0, x1 = xs[k], xs[k + 1]
        if d0 == 0 and start is None and d1 != 0:
            start = Fraction(x0, scale)
        elif d0 != 0 and d1 != 0 and (d0 > 0) != (d1 > 0):
            cross = Fraction(x0, scale) + Fraction(d0 * (x1 - x0), (d0 - d1) * scale)
            comps.append((start, cross))
            start = cross
        elif d0 != 0 and d1 == 0:
            comps.append((start, Fraction(x1, scale)))
            start = None
    if f.tail != 0:
        if start is None:
            start = Fraction(xs[-1], scale)
        comps.append((start, None))
    elif start is not None:
        comps.append((start, Fraction(xs[-1], scale)))
    return [
        Interval(_rational(lo), None if hi is None else _rational(hi), True, True)
        for lo, hi in comps
    ]


def _points_in(f: PLMap, region: Interval) -> list:
    lo = _frac(region.lo)
    hi = None if region.hi is None else _frac(region.hi)
    scale = 1 << f._e
    pts = [lo]
    for x in f._xs:
        fx = Fraction(x, scale)
        if fx > lo and (hi is None or fx < hi):
            pts.append(fx)
    if hi is not None:
        pts.append(hi)
    return pts


def _eval_frac(f: PLMap, t: Fraction) -> Fraction:
    scale = 1 << f._e
    idx = bisect_right(f._xs, (t * scale).__floor__()) - 1
    if idx == len(f._xs) - 1:
        return t + f.tail
    x0, y0 = Fraction(f._xs[idx], scale), Fraction(f._ys[idx], scale)
    s = f._sl[idx]
    return y0 + (t - x0) * (Fraction(2) ** s)


def max_displacement(f: PLMap, region: Interval) -> Number:
    """Largest ``|f(t) - t|`` over a bounded region."""
    if not region.bounded:
        raise ValueError("region must be bounded")
    best = max(abs(_eval_frac(f, t) - t) for t in _points_in(f, region))
    return _rational(best)


def agree_on(f: PLMap, g: PLMap, region: Interval) -> bool:
    """True iff f and g coincide at every point of the region."""
    pts = sorted(set(_points_in(f, region)) | set(_points_in(g, region)))
    if any(_eval_frac(f, t) != _eval_frac(g, t) for t in pts):
        return False
    if region.hi is None:
        return f.tail == g.tail
    return True


def slope_at(f: PLMap, t, side: str = "right") -> Dyadic:
    """One-sided derivative of f at t."""
    t = Dyadic.coerce(t)
    if t < 0 or (side == "left" and t == 0):
        raise ValueError("point outside the domain for that side")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    e = f._e
    xs = f._xs
    scale_t = t.to_fraction() * (1 << e)
    if side == "right":
        idx = bisect_right(xs, scale_t.__floor__()) - 1
    else:
        # segment whose open interior lies just left of t
        idx = bisect_right(xs, scale_t.__ceil__() - 1) - 1
    if idx >= len(f._sl):
        return Dyadic(1)
    return Dyadic(1).mul_pow2(f._sl[idx])


def conjugate_by_translation(f: PLMap, k: int) -> PLMap:
    """Fix [0, k] and act as f shifted right by k beyond it."""
    if k < 0:
        raise ValueError("translation must be non-negative")
    if f.is_identity() or k == 0:
        return f
    e = f._e
    sh = k << e
    xs = (0,) + tuple(x + sh for x in f._xs)
    ys = (0,) + tuple(y + sh for y in f._ys)
    return PLMap._raw(e, xs, ys, f.tail)
