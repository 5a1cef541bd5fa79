"""Free words over signed alphabets: reduction, enumeration, parsing, evaluation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, NamedTuple, Optional, Sequence, Union

from .plmap import IDENTITY, PLMap, compose, invert

__all__ = [
    "Letter",
    "Word",
    "ParseError",
    "X_ALPHABET",
    "MARKING",
    "reduce",
    "enumerate_reduced",
    "word_to_map",
    "parse",
]

X_ALPHABET = "x"
MARKING = "marking"

MAX_EXPONENT = 10_000
MARKING_NAMES = "ab"


class Letter(NamedTuple):
    gen: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Word:
    letters: tuple = ()
    alphabet: str = X_ALPHABET

    @classmethod
    def of(cls, pairs: Sequence, alphabet: str = X_ALPHABET) -> "Word":
        """Build from ``(gen, exponent)`` pairs, expanding exponents."""
        out = []
        for gen, exp in pairs:
            sign = 1 if exp > 0 else -1
            out.extend([Letter(gen, sign)] * abs(exp))
        return cls(tuple(out), alphabet)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.alphabet)

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k), self.alphabet)

    def inverse(self) -> "Word":
        return Word(tuple(l.inverse() for l in reversed(self.letters)), self.alphabet)

    def is_reduced(self) -> bool:
        ls = self.letters
        return all(ls[k] != ls[k + 1].inverse() for k in range(len(ls) - 1))

    def reduce(self) -> "Word":
        return reduce(self)

    def with_alphabet(self, alphabet: str) -> "Word":
        return Word(self.letters, alphabet)

    def syllables(self) -> list:
        """Run-length form as ``[(gen, exponent), ...]``."""
        out = []
        for gen, sign in self.letters:
            if out and out[-1][0] == gen and (out[-1][1] > 0) == (sign > 0):
                out[-1][1] += sign
            else:
                out.append([gen, sign])
        return [tuple(s) for s in out]

    def __str__(self) -> str:
        if not self.letters:
            return ""
        parts = []
        for gen, exp in self.syllables():
            name = MARKING_NAMES[gen] if self.alphabet == MARKING else f"x{gen}"
            parts.append(name if exp == 1 else f"{name}^{exp}")
        return " ".join(parts)


def reduce(w: Word) -> Word:
    """Freely reduce: cancel adjacent inverse pairs until none remain."""
    stack = []
    for l in w.letters:
        if stack and stack[-1].gen == l.gen and stack[-1].sign == -l.sign:
            stack.pop()
        else:
            stack.append(l)
    return Word(tuple(stack), w.alphabet)


def _letters(rank: int) -> list:
    return [Letter(g, s) for g in range(rank) for s in (1, -1)]


def enumerate_reduced(
    rank: int, max_len: int, first: Optional[Letter] = None, min_len: int = 0
) -> Iterator[Word]:
    """All reduced words of length <= max_len in length-lexicographic order.

    Letter order is ``a, a^-1, b, b^-1, ...``.  ``first`` restricts the stream
    to words starting with that letter (the empty word is then skipped), which
    partitions the ball for parallel scanning.
    """
    if rank < 1 or max_len < 0:
        raise ValueError("rank must be >= 1 and max_len >= 0")
    alphabet = _letters(rank)

    def level(n: int, prefix: list):
        if len(prefix) == n:
            yield Word(tuple(prefix), MARKING)
            return
        for l in alphabet:
            if prefix and prefix[-1] == l.inverse():
                continue
            if not prefix and first is not None and l != first:
                continue
            prefix.append(l)
            yield from level(n, prefix)
            prefix.pop()

    for n in range(min_len, max_len + 1):
        if n == 0 and first is not None:
            continue
        yield from level(n, [])


Assignment = Union[Mapping[int, PLMap], Sequence[PLMap]]


def word_to_map(w: Word, assignment: Assignment) -> PLMap:
    """Evaluate a word left to right (right action) under an assignment of maps."""
    cache = {}
    result = IDENTITY
    for gen, sign in w.letters:
        key = (gen, sign)
        f = cache.get(key)
        if f is None:
            try:
                f = assignment[gen]
            except (KeyError, IndexError):
                raise KeyError(f"generator {gen} has no assigned map") from None
            if sign < 0:
                f = invert(f)
            cache[key] = f
        result = compose(result, f)
    return result


_TOKEN = re.compile(r"\s*(?:(x)(\d+)|([ab]))(?:\^([+-]?\d+))?")


def parse(text: str) -> Word:
    """Parse ``term*`` with ``term := NAME ("^" SIGNED_INT)?``.

    ``NAME`` is ``x<UINT>`` or one of the marking names ``a``/``b``; the two
    kinds cannot be mixed in one word.
    """
    letters = []
    alphabet = None
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        mt = _TOKEN.match(text, pos)
        if mt is None:
            if text[pos] == "x" and pos + 1 < n and text[pos + 1] == "-":
                raise ParseError("negative generator index", pos + 1)
            raise ParseError(f"unexpected {text[pos]!r}", pos)
        xname, idx, mname, exp = mt.groups()
        end = mt.end()
        if end < n and not text[end].isspace():
            raise ParseError(f"unexpected {text[end]!r}", end)
        kind = X_ALPHABET if xname else MARKING
        if alphabet is None:
            alphabet = kind
        elif alphabet != kind:
            raise ParseError("mixed x- and marking-alphabet names", pos)
        gen = int(idx) if xname else MARKING_NAMES.index(mname)
        e = 1 if exp is None else int(exp)
        if abs(e) > MAX_EXPONENT:
            raise ParseError(f"exponent {e} exceeds {MAX_EXPONENT}", pos)
        sign = 1 if e > 0 else -1
        letters.extend([Letter(gen, sign)] * abs(e))
        pos = end
    return Word(tuple(letters), alphabet or X_ALPHABET)
