"""Normal forms in the infinite presentation of F.

Relations: ``x_j x_i = x_i x_{j+1}`` for ``i < j``.  A word is first pushed
into seminormal form ``x_{i1} ... x_{ik} x_{jl}^-1 ... x_{j1}^-1`` with
``i1 <= ... <= ik`` and ``j1 <= ... <= jl``, then pairs ``x_i v x_i^-1`` whose
middle avoids indices ``<= i+1`` are collapsed (``x_i x_k x_i^-1 = x_{k-1}``
for ``k >= i+2``) until the normality condition holds.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass

from .plmap import IDENTITY, PLMap, compose, invert
from .words import X_ALPHABET, Letter, Word

__all__ = [
    "NormalForm",
    "to_normal_form",
    "nf_equal",
    "nf_to_map",
    "closed_form_z_w_p",
    "closed_form_q_h_k",
]


def _rle(indices) -> tuple:
    out = []
    for i in indices:
        if out and out[-1][0] == i:
            out[-1][1] += 1
        else:
            out.append([i, 1])
    return tuple((i, e) for i, e in out)


def _expand(pairs) -> list:
    out = []
    for i, e in pairs:
        out.extend([i] * e)
    return out


@dataclass(frozen=True)
class NormalForm:
    """``pos`` and ``neg`` are ascending run-length lists ``((index, exp), ...)``.

    The element is ``prod x_i^a over pos`` times ``(prod x_j^b over neg)^-1``.
    """

    pos: tuple = ()
    neg: tuple = ()

    @classmethod
    def from_parts(cls, pos_indices, neg_indices) -> "NormalForm":
        return cls(_rle(sorted(pos_indices)), _rle(sorted(neg_indices)))

    def is_normal(self) -> bool:
        p = {i for i, _ in self.pos}
        n = {i for i, _ in self.neg}
        both = p | n
        return not any(i + 1 not in both for i in p & n)

    def to_word(self) -> Word:
        pairs = list(self.pos) + [(i, -e) for i, e in reversed(self.neg)]
        return Word.of(pairs, X_ALPHABET)

    def __len__(self) -> int:
        return sum(e for _, e in self.pos) + sum(e for _, e in self.neg)

    def __str__(self) -> str:
        return str(self.to_word())


def _push_positive(pos: list, neg: list, k: int) -> None:
    """Right-multiply ``pos * neg^-1`` by ``x_k`` in place."""
    # x_k travels left through x_{jl}^-1 ... x_{j1}^-1, meeting j1 first.
    for idx, j in enumerate(neg):
        if k > j:
            k += 1  # x_j^-1 x_k = x_{k+1} x_j^-1
        elif k == j:
            del neg[idx]
            return
        else:
            # x_j^-1 x_k = x_k x_{j+1}^-1, and every later j is larger still
            for r in range(idx, len(neg)):
                neg[r] += 1
            break
    # x_i x_k = x_k x_{i+1} for i > k
    cut = bisect_right(pos, k)
    for r in range(cut, len(pos)):
        pos[r] += 1
    pos.insert(cut, k)


def _push_negative(neg: list, k: int) -> None:
    """Right-multiply by ``x_k^-1``, i.e. left-multiply ``neg`` by ``x_k``."""
    # x_k x_j = x_j x_{k+1} for j < k
    for j in neg:
        if j < k:
            k += 1
        else:
            break
    insort(neg, k)


def _collapse(pos: list, neg: list) -> None:
    """Remove ``x_i ... x_i^-1`` pairs that violate the normality condition."""
    while True:
        present = set(pos) | set(neg)
        bad = None
        for i in sorted(set(pos) & set(neg), reverse=True):
            if i + 1 not in present:
                bad = i
                break
        if bad is None:
            return
        pos.remove(bad)
        neg.remove(bad)
        for r, v in enumerate(pos):
            if v > bad:
                pos[r] = v - 1
        for r, v in enumerate(neg):
            if v > bad:
                neg[r] = v - 1


def to_normal_form(w: Word) -> NormalForm:
    if w.alphabet != X_ALPHABET:
        raise ValueError("normal forms are defined for words over x_0, x_1, ...")
    pos, neg = [], []
    for gen, sign in w.letters:
        if sign > 0:
            _push_positive(pos, neg, gen)
        else:
            _push_negative(neg, gen)
    _collapse(pos, neg)
    return NormalForm(_rle(pos), _rle(neg))


def nf_equal(u: Word, v: Word) -> bool:
    return to_normal_form(u) == to_normal_form(v)


def _std_x(i: int) -> PLMap:
    if i == 0:
        return PLMap([(0, 0), (1, 2)], 1)
    return PLMap([(0, 0), (i, i), (i + 1, i + 2)], 1)


def nf_to_map(nf: NormalForm) -> PLMap:
    """The map of a normal form under ``i -> x_i``."""
    result = IDENTITY
    for i, e in nf.pos:
        result = compose(result, _std_x(i) ** e)
    for i, e in reversed(nf.neg):
        result = compose(result, invert(_std_x(i)) ** e)
    return result


def closed_form_z_w_p(i: int) -> tuple:
    """Closed normal forms of the lower-case z, w, p for conjugation power i."""
    if i < 3:
        raise ValueError("closed forms need i >= 3")
    z = NormalForm(
        ((0, 4), (1, 2 * i), (4, 1), (2 * i + 6, 1)),
        ((0, 4), (2, 2 * i), (2 * i + 5, 2)),
    )
    w = NormalForm(
        ((0, 4), (1, 2 * i), (2, 1), (5, 1), (2 * i + 6, 1), (2 * i + 8, 1)),
        ((0, 4), (2, 2 * i), (3, 1), (2 * i + 5, 1), (2 * i + 7, 2)),
    )
    p = NormalForm(
        ((0, 3), (1, 2 * i + 1), (2 * i + 5, 3)),
        ((0, 3), (1, 2 * i), (2, 1), (2 * i + 4, 1), (2 * i + 6, 2)),
    )
    return z, w, p


def closed_form_q_h_k() -> tuple:
    """``q = x1^2 x2 x1^-3``, ``h = x2 x1^-1``, ``k = x1 x2 x1^-2``; independent of i."""
    q = NormalForm(((1, 2), (2, 1)), ((1, 3),))
    h = NormalForm(((2, 1),), ((1, 1),))
    k = NormalForm(((1, 1), (2, 1)), ((1, 2),))
    return q, h, k
