"""Instance checks: word identities, supports, escape, free balls, ping-pong, coverage."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .construct import (
    GeneratorSet,
    Params,
    lower_defs,
    std_w,
    std_x,
    std_y,
    the_defs,
)
from .dyadic import Dyadic
from .normalform import closed_form_q_h_k, to_normal_form
from .plmap import (
    IDENTITY,
    Interval,
    PLMap,
    compose,
    evaluate,
    invert,
    support,
)
from .words import MARKING, Letter, Word, word_to_map

__all__ = [
    "def_maps",
    "lower_maps",
    "support_within",
    "hull",
    "check_prop_i",
    "check_prop_ii",
    "support_analysis",
    "check_c_escape",
    "BallReport",
    "ball_check",
    "standard_marking",
    "PingPongState",
    "ping_pong_certify",
    "associated_set",
    "CoverReport",
    "coverage_check",
    "gen_lemma_check",
    "DistanceBound",
    "distance_bound",
]


_d = Dyadic.parse


# -- evaluating the word tower ---------------------------------------------


def _tower(A: dict, i: int) -> dict:
    """Maps of C, S, T, ... under the generator assignment A, built the way
    the words are defined rather than letter by letter."""
    defs = _base_words()
    C, S, T = (word_to_map(defs[k], A) for k in ("C", "S", "T"))
    Ci = C ** i
    Cmi = invert(Ci)
    Sigma = compose(compose(Cmi, S), Ci)
    Theta = compose(compose(Cmi, T), Ci)
    Z = compose(compose(compose(S, Sigma), invert(S)), invert(Sigma))
    W = compose(compose(compose(T, Theta), invert(T)), invert(Theta))
    P = compose(invert(Z), W)
    X1 = A[1]
    Q = compose(compose(compose(invert(X1), P), X1), invert(P))
    H = compose(compose(X1 ** -2, Q), X1 ** 2)
    K = compose(compose(X1, H), invert(X1))
    return dict(C=C, S=S, T=T, Sigma=Sigma, Theta=Theta, Z=Z, W=W, P=P, Q=Q, H=H, K=K)


def _base_words() -> dict:
    # C, S, T do not depend on the conjugation power
    return the_defs(Params())


def def_maps(gens: GeneratorSet) -> dict:
    """Maps of the capital words under (X0, X1), cached on the generator set."""
    if "defs" not in gens._cache:
        gens._cache["defs"] = _tower(gens.assignment, gens.params.i)
    return gens._cache["defs"]


_LOWER: dict = {}


def lower_maps(p: Params) -> dict:
    """Maps of the lower-case twins under (x0, x1); they depend only on i."""
    if p.i not in _LOWER:
        _LOWER[p.i] = _tower({0: std_x(0), 1: std_x(1)}, p.i)
    return _LOWER[p.i]


# -- support helpers ---------------------------------------------------------


def support_within(f: PLMap, region: Interval) -> list:
    out = []
    for comp in support(f):
        part = comp.intersect(region)
        if part is not None:
            out.append(part)
    return out


def hull(intervals: Sequence[Interval]) -> Optional[Interval]:
    if not intervals:
        return None
    return Interval(intervals[0].lo, intervals[-1].hi, True, True)


def _f(v) -> Fraction:
    return v.to_fraction() if isinstance(v, Dyadic) else Fraction(v)


def _disjoint(a: Sequence[Interval], b: Sequence[Interval]) -> bool:
    for u in a:
        for v in b:
            if u.intersect(v) is not None:
                return False
    return True


def _upper_region(p: Params) -> Interval:
    return Interval.open(p.b - 5)


# -- Proposition parts (i) and (ii) ---------------------------------------------


def check_prop_i(gens: GeneratorSet) -> dict:
    """Capital words Z, W, P, Q, H, K equal their lower-case twins; and
    conjugates of S, T by C^i are pushed off the supports of S, T above b-5."""
    p = gens.params
    cap, low = def_maps(gens), lower_maps(p)
    equalities = {name: cap[name] == low[name] for name in ("Z", "W", "P", "Q", "H", "K")}
    region = _upper_region(p)
    sup = {k: support_within(cap[k], region) for k in ("S", "T", "Sigma", "Theta")}
    window = Interval.open(p.xi + _d("19/16"), p.xi + _d("3/2"))
    mechanism = {
        "Z_trivial_above": not support_within(cap["Z"], region),
        "W_trivial_above": not support_within(cap["W"], region),
        "Sigma_in_window": all(_inside(c, window) for c in sup["Sigma"]),
        "Theta_in_window": all(_inside(c, window) for c in sup["Theta"]),
        "Sigma_disjoint": _disjoint(sup["Sigma"], sup["S"]) and _disjoint(sup["Sigma"], sup["T"]),
        "Theta_disjoint": _disjoint(sup["Theta"], sup["S"]) and _disjoint(sup["Theta"], sup["T"]),
    }
    ok = all(equalities.values()) and all(mechanism.values())
    return {"ok": ok, "equalities": equalities, "mechanism": mechanism}


def _inside(c: Interval, outer: Interval) -> bool:
    lo_ok = _f(c.lo) >= _f(outer.lo)
    if outer.hi is None:
        return lo_ok
    return lo_ok and c.hi is not None and _f(c.hi) <= _f(outer.hi)


def check_prop_ii(gens: GeneratorSet) -> dict:
    """H = w1^-1 and K = y1^-1 as maps, cross-checked by normal forms of h, k."""
    cap = def_maps(gens)
    low_words = lower_defs(gens.params)
    _, h_nf, k_nf = closed_form_q_h_k()
    checks = {
        "H_is_w1_inverse": cap["H"] == invert(std_w(1)),
        "K_is_y1_inverse": cap["K"] == invert(std_y(1)),
        "nf_h": to_normal_form(low_words["H"]) == h_nf,
        "nf_k": to_normal_form(low_words["K"]) == k_nf,
    }
    return {"ok": all(checks.values()), "checks": checks}


def support_analysis(gens: GeneratorSet) -> dict:
    """Supports above b-5 of C, S, T, Sigma, Theta, with the expected hulls."""
    p = gens.params
    cap = def_maps(gens)
    region = _upper_region(p)
    half = _d("1/2")
    expected = {
        "C": Interval.open(p.b - 4 - half, p.u + 3 + half),
        "S": Interval.open(p.b - 2 - half, p.u + 3 + _d("1/8")),
        "T": Interval.open(p.b - 2 - half, p.u + 3 + _d("1/8")),
    }
    window = Interval.open(p.u + 3 + _d("3/16"), p.u + 3 + half)
    table = {}
    for name in ("C", "S", "T", "Sigma", "Theta"):
        comps = support_within(cap[name], region)
        h = hull(comps)
        entry = {"components": comps, "hull": h}
        if name in expected:
            entry["expected"] = expected[name]
            entry["match"] = h == expected[name]
        else:
            entry["expected_within"] = window
            entry["match"] = h is not None and _inside(h, window)
        table[name] = entry
    return table


def check_c_escape(gens: GeneratorSet, grid_step="1/16") -> dict:
    """Every eta in [b-3 1/2, xi+1 1/2] satisfies eta C^(m+2) > xi + 1 3/16.

    Checked on a grid and at every breakpoint of C^(m+2) in range.  The power
    is increasing, so passing at the left end already implies the rest.
    """
    p = gens.params
    step = Dyadic.coerce(grid_step)
    if not (0 < step <= _d("1/16")):
        raise ValueError("grid step must be a positive dyadic no larger than 1/16")
    C = def_maps(gens)["C"]
    power = C ** p.i
    lo = p.b - 4 + _d("1/2")
    hi = p.xi + _d("3/2")
    threshold = p.xi + _d("19/16")
    pts = []
    t = lo
    while t <= hi:
        pts.append(t)
        t = t + step
    pts += [x for x in power.break_xs() if lo <= x <= hi]
    failures = []
    worst = None
    for eta in pts:
        img = evaluate(power, eta)
        if worst is None or img < worst[1]:
            worst = (eta, img)
        if not img > threshold:
            failures.append((eta, img))
    return {
        "ok": not failures,
        "power": p.i,
        "threshold": threshold,
        "points_checked": len(pts),
        "min_image": worst,
        "failures": failures[:10],
    }


# -- free balls ----------------------------------------------------------------


Marking = Union[GeneratorSet, Sequence[PLMap]]


def standard_marking() -> tuple:
    return (std_x(0), std_x(1))


def _marking_maps(marking: Marking) -> tuple:
    if isinstance(marking, GeneratorSet):
        return (marking.X0, marking.X1)
    return tuple(marking)


@dataclass
class BallReport:
    checked_len: int
    words_checked: int
    shortest_relation: Optional[Word]
    params: Optional[Params] = None

    @property
    def relation_free(self) -> bool:
        return self.shortest_relation is None

    def to_json(self) -> dict:
        rel = None
        if self.shortest_relation is not None:
            rel = {"length": len(self.shortest_relation), "word": str(self.shortest_relation)}
        out = {
            "checked_len": self.checked_len,
            "words_checked": self.words_checked,
            "shortest_relation": rel,
        }
        if self.params is not None:
            out["params"] = self.params.to_json()
        return out


def _scan(maps: tuple, L: int, first: Optional[int]):
    """Depth-first scan of reduced words, reusing prefix maps.

    Letter codes are ``2*gen + (0 for +, 1 for -)``; code ^ 1 is the inverse.
    Returns (count, best) with best the smallest (length, codes) relation.
    """
    letters = []
    for f in maps:
        letters.append(f)
        letters.append(invert(f))
    ncodes = len(letters)
    count = 0
    best = None
    path = []

    def dfs(prefix: PLMap, last: int):
        nonlocal count, best
        for c in range(ncodes):
            if c == last ^ 1:
                continue
            h = compose(prefix, letters[c])
            path.append(c)
            count += 1
            if h.is_identity():
                key = (len(path), tuple(path))
                if best is None or key < best:
                    best = key
            if len(path) < L:
                dfs(h, c)
            path.pop()

    if first is None:
        dfs(IDENTITY, -2)
    else:
        path.append(first)
        count += 1
        h = letters[first]
        if h.is_identity():
            best = (1, (first,))
        if L > 1:
            dfs(h, first)
    return count, best


def _scan_job(args):
    return _scan(*args)


def ball_check(marking: Marking, L: int, jobs: int = 1) -> BallReport:
    """Evaluate every nonempty reduced word of length <= L; report the
    shortest (then lexicographically least) word that is the identity."""
    if L < 1:
        raise ValueError("L must be at least 1")
    maps = _marking_maps(marking)
    if jobs > 1:
        tasks = [(maps, L, c) for c in range(2 * len(maps))]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_job, tasks))
    else:
        results = [_scan(maps, L, None)]
    count = sum(r[0] for r in results)
    bests = [r[1] for r in results if r[1] is not None]
    witness = None
    if bests:
        _, codes = min(bests)
        witness = Word(tuple(Letter(c >> 1, -1 if c & 1 else 1) for c in codes), MARKING)
    params = marking.params if isinstance(marking, GeneratorSet) else None
    return BallReport(L, count, witness, params)


# -- ping-pong certificates -------------------------------------------------------


def associated_set(p: Params, letter: Letter) -> list:
    """Attracting fixed points of a letter inside the block region."""
    if letter.gen == 0:
        start = p.b if letter.sign > 0 else p.b + 2
        return list(range(start, p.u + 1, 4))
    start = p.b + 1 if letter.sign > 0 else p.b + 3
    return list(range(start, p.u + 2, 4))


def _residue(p: Params, letter: Letter) -> int:
    return associated_set(p, letter)[0] % 4


@dataclass
class PingPongState:
    zeta0: Optional[int]
    trace: list = field(default_factory=list)
    verdict: str = "inconclusive"
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {
            "zeta0": self.zeta0,
            "verdict": self.verdict,
            "reason": self.reason,
            "trace": [
                {"letter": str(Word((l,), MARKING)), "image": str(img), "near": near}
                for l, img, near in self.trace
            ],
        }


def _track(gens: GeneratorSet, w: Word, zeta: int) -> PingPongState:
    p = gens.params
    A = {(0, 1): gens.X0, (0, -1): invert(gens.X0), (1, 1): gens.X1, (1, -1): invert(gens.X1)}
    lo, hi = p.b + 1, p.u
    half = _d("1/2")
    state = PingPongState(zeta)
    image = Dyadic(zeta)
    for letter in w.letters:
        image = evaluate(A[tuple(letter)], image)
        targets = associated_set(p, letter)
        near = min(targets, key=lambda a: abs(image - a))
        state.trace.append((letter, image, near))
        if not lo <= image <= hi:
            state.reason = f"image {image.pretty()} left the window [{lo}, {hi}]"
            return state
        if abs(image - near) > half:
            state.reason = f"image {image.pretty()} is not within 1/2 of the attracting set"
            return state
    if len(w) > p.n:
        state.reason = f"word longer than n = {p.n}"
        return state
    if image == zeta:
        state.reason = "tracked point returned to the seed"
        return state
    state.verdict = "certified"
    return state


def ping_pong_certify(gens: GeneratorSet, w: Word) -> PingPongState:
    """Track a seed near b+2m through w; certified means w is not the identity."""
    if not w.letters:
        raise ValueError("empty word")
    if not w.is_reduced():
        raise ValueError("word must be reduced")
    p = gens.params
    bad = {_residue(p, w.letters[-1]), _residue(p, w.letters[0].inverse())}
    centre = p.b + 2 * p.m
    seeds = sorted(range(centre - 2, centre + 3), key=lambda z: (abs(z - centre), z))
    seeds = [z for z in seeds if z % 4 not in bad]
    first = None
    for z in seeds:
        state = _track(gens, w, z)
        if state.certified:
            return state
        if first is None:
            first = state
    return first


# -- coverage ------------------------------------------------------------------------


@dataclass
class CoverReport:
    target: Interval
    covered: list
    iterations: int
    verdict: str

    @property
    def ok(self) -> bool:
        return self.verdict == "covered"

    def to_json(self) -> dict:
        return {
            "target": str(self.target),
            "covered": [f"({lo.pretty()}, {hi.pretty()})" for lo, hi in self.covered],
            "iterations": self.iterations,
            "verdict": self.verdict,
        }


def _merge(intervals: list) -> list:
    intervals.sort()
    out = []
    for lo, hi in intervals:
        if out and lo < out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


def coverage_check(gens: GeneratorSet, delta, N, max_iter: int = 1000) -> CoverReport:
    """Grow the union of translates of (1, 3) under X0, X1, C and inverses
    until it contains (delta, N]."""
    delta, N = Dyadic.coerce(delta), Dyadic.coerce(N)
    if not (0 < delta < 1 and N >= 3):
        raise ValueError("need 0 < delta < 1 and N >= 3")
    target = Interval(delta, N, True, False)
    C = def_maps(gens)["C"]
    maps = [gens.X0, gens.X1, C]
    maps += [invert(f) for f in maps]
    covered = [(Dyadic(1), Dyadic(3))]

    def done():
        return any(lo <= delta and N < hi for lo, hi in covered)

    it = 0
    while not done():
        if it >= max_iter:
            return CoverReport(target, covered, it, "inconclusive")
        grown = list(covered)
        for f in maps:
            grown += [(evaluate(f, lo), evaluate(f, hi)) for lo, hi in covered]
        grown = _merge(grown)
        it += 1
        if grown == covered:
            return CoverReport(target, covered, it, "not_covered")
        covered = grown
    return CoverReport(target, covered, it, "covered")


# -- generation lemma and distance -----------------------------------------------------


def _compact_away_from_zero(f: PLMap) -> dict:
    comps = support(f)
    bounded = f.tail == 0
    lo = comps[0].lo if comps else None
    hi = comps[-1].hi if comps else None
    return {
        "support": comps,
        "bounded": bounded,
        "hull": None if not comps else (lo, hi),
        "ok": bounded and (not comps or _f(lo) > 0),
    }


def gen_lemma_check(gens: GeneratorSet, delta="1/2^20", N=60) -> dict:
    """Hypotheses (a)-(d) of the generation lemma for the pair (X0, X1)."""
    a = _compact_away_from_zero(compose(gens.X0, invert(std_x(0))))
    b = _compact_away_from_zero(compose(gens.X1, invert(std_x(1))))
    c = check_prop_ii(gens)
    d = coverage_check(gens, delta, N)
    return {
        "a": a,
        "b": b,
        "c": c,
        "d": d,
        "ok": a["ok"] and b["ok"] and c["ok"] and d.ok,
    }


@dataclass
class DistanceBound:
    """The marking is within e^-R of the free 2-marking."""

    R: int
    checked_len: int
    witness: Optional[Word] = None

    def __str__(self) -> str:
        return f"e^-{self.R}"

    def to_json(self) -> dict:
        return {
            "R": self.R,
            "bound": str(self),
            "checked_len": self.checked_len,
            "witness": None if self.witness is None else str(self.witness),
        }


def distance_bound(marking: Marking, Lmax: int, jobs: int = 1) -> DistanceBound:
    report = ball_check(marking, Lmax, jobs)
    if report.shortest_relation is None:
        return DistanceBound(Lmax, Lmax)
    return DistanceBound(len(report.shortest_relation) - 1, Lmax, report.shortest_relation)
