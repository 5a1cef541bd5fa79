"""Acceptance criteria, one test each.

Every test prints a single ``[PASS]`` or ``[FAIL]`` line.  Run with
``pytest tests/test_acceptance.py -s`` to see them, or run this file directly.
"""

import random
import sys
import time

import pytest

from thompsonf.construct import Params, build_generators, lower_defs, std_w, std_x, std_y
from thompsonf.dyadic import Dyadic
from thompsonf.normalform import (
    NormalForm,
    closed_form_q_h_k,
    closed_form_z_w_p,
    nf_equal,
    nf_to_map,
    to_normal_form,
)
from thompsonf.plmap import Interval, invert
from thompsonf.verify import (
    ball_check,
    check_c_escape,
    def_maps,
    distance_bound,
    gen_lemma_check,
    hull,
    lower_maps,
    ping_pong_certify,
    standard_marking,
    support_analysis,
    support_within,
)
from thompsonf.words import X_ALPHABET, Word, enumerate_reduced, word_to_map

GRID = [Params(m, b) for m in range(2, 7) for b in (20, 24)]
_d = Dyadic.parse


def report(num: int, ok: bool, detail: str) -> None:
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {num:2d}: {detail}", file=sys.__stdout__, flush=True)
    assert ok, detail


def test_01_closed_forms():
    t0 = time.perf_counter()
    bad = []
    for m in range(2, 7):
        p = Params(m, 20)
        low = lower_defs(p)
        got = [to_normal_form(low[k]) for k in ("Z", "W", "P", "Q", "H", "K")]
        want = list(closed_form_z_w_p(p.i)) + list(closed_form_q_h_k())
        bad += [(m, k) for k, g, e in zip("zwpqhk", got, want) if g != e]
    q, h, k = closed_form_q_h_k()
    literal = (str(q), str(h), str(k)) == ("x1^2 x2 x1^-3", "x2 x1^-1", "x1 x2 x1^-2")
    dt = time.perf_counter() - t0
    report(1, not bad and literal and dt < 5, f"closed normal forms for m=2..6, mismatches={bad}, {dt:.2f}s")


def test_02_prop_i_grid():
    t0 = time.perf_counter()
    bad = []
    for p in GRID:
        cap, low = def_maps(build_generators(p)), lower_maps(p)
        bad += [(p.m, p.b, k) for k in ("Z", "W", "P", "Q", "H", "K") if cap[k] != low[k]]
    dt = time.perf_counter() - t0
    report(2, not bad and dt < 10, f"capital = lower-case for Z,W,P,Q,H,K on {len(GRID)} instances, "
                                  f"mismatches={bad}, {dt:.2f}s")


def test_03_prop_ii_grid():
    bad = []
    for p in GRID:
        cap = def_maps(build_generators(p))
        if cap["H"] != invert(std_w(1)) or cap["K"] != invert(std_y(1)):
            bad.append((p.m, p.b))
    report(3, not bad, f"H = w1^-1 and K = y1^-1 on {len(GRID)} instances, failures={bad}")


def test_04_supports():
    bad = []
    for p in GRID:
        gens = build_generators(p)
        table = support_analysis(gens)
        half = _d("1/2")
        want = {
            "C": Interval.open(p.b - 4 - half, p.u + 3 + half),
            "S": Interval.open(p.b - 2 - half, p.u + 3 + _d("1/8")),
            "T": Interval.open(p.b - 2 - half, p.u + 3 + _d("1/8")),
        }
        for name, iv in want.items():
            if table[name]["hull"] != iv:
                bad.append((p.m, p.b, name))
        window = Interval.open(p.u + 3 + _d("3/16"), p.u + 3 + half)
        for name, other in (("Sigma", "S"), ("Theta", "T")):
            h = table[name]["hull"]
            inside = h is not None and window.lo <= h.lo and h.hi <= window.hi
            apart = all(c.intersect(d) is None
                        for c in table[name]["components"] for d in table[other]["components"])
            if not (inside and apart):
                bad.append((p.m, p.b, name))
    report(4, not bad, f"supports of C,S,T,Sigma,Theta above b-5 on {len(GRID)} instances, failures={bad}")


def test_05_escape():
    r = check_c_escape(build_generators(Params(5, 20)), grid_step="1/16")
    ok = r["ok"] and r["power"] == 7 and r["points_checked"] >= 433
    pt, img = r["min_image"]
    report(5, ok, f"eta C^7 > 43 3/16 at {r['points_checked']} points, "
                  f"smallest image {float(img.to_fraction()):.6f} at eta = {pt.pretty()}")


def test_06_free_balls():
    bad = []
    for m in range(2, 6):
        r = ball_check(build_generators(Params(m, 20)), max(1, 2 * m - 4))
        if not r.relation_free:
            bad.append(m)
    t0 = time.perf_counter()
    r5 = ball_check(build_generators(Params(5, 20)), 7)
    t5 = time.perf_counter() - t0
    t0 = time.perf_counter()
    r6 = ball_check(build_generators(Params(6, 20)), 9)
    t6 = time.perf_counter() - t0
    ok = (not bad and r5.relation_free and r5.words_checked == 4372 and t5 < 10
          and r6.relation_free and r6.words_checked == 39364 and t6 < 60)
    report(6, ok, f"no relation: m=2..5 at 2m-4, m=5 L=7 ({r5.words_checked} words, {t5:.1f}s), "
                  f"m=6 L=9 ({r6.words_checked} words, {t6:.1f}s)")


def test_07_ping_pong():
    gens = build_generators(Params(4, 20))
    unsound = []
    short_total = short_cert = 0
    for w in enumerate_reduced(2, 5, min_len=1):
        cert = ping_pong_certify(gens, w).certified
        if cert and word_to_map(w, gens.assignment).is_identity():
            unsound.append(str(w))
        if len(w) <= 4:
            short_total += 1
            short_cert += cert
    ok = not unsound and short_cert == short_total
    report(7, ok, f"m=4: unsound certificates={len(unsound)}, certified {short_cert}/{short_total} "
                  f"words of length <= 4")


def test_08_standard_marking():
    r = ball_check(standard_marking(), 10)
    d = distance_bound(standard_marking(), 10)
    rel = r.shortest_relation
    ok = rel is not None and len(rel) <= 10 and d.R == len(rel) - 1
    report(8, ok, f"(x0, x1) has relation {rel} of length {len(rel) if rel else None}, distance {d}")


def _random_words(count, seed=12345):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(0, 12)
        yield Word.of([(rng.randint(0, 4), rng.choice((1, -1))) for _ in range(n)], X_ALPHABET)


def test_09_cross_semantics():
    std = {i: std_x(i) for i in range(40)}
    words = list(_random_words(1000))
    failures = 0
    for w in words:
        if nf_to_map(to_normal_form(w)) != word_to_map(w, std):
            failures += 1
    pairs = list(zip(words, words[1:]))
    # equal pairs: a word against its normal form and against a relation-padded copy
    pairs += [(w, to_normal_form(w).to_word()) for w in words[:200]]
    pairs += [(w, Word.of([(1, 1), (0, 1), (2, -1), (0, -1)], X_ALPHABET) * w) for w in words[:200]]
    for u, v in pairs:
        if nf_equal(u, v) != (word_to_map(u, std) == word_to_map(v, std)):
            failures += 1
    report(9, failures == 0, f"1000 random words and {len(pairs)} pairs, failures={failures}")


def test_10_generation():
    r = gen_lemma_check(build_generators(Params(5, 20)), delta="1/2^20", N=60)
    away = all(r[k]["bounded"] and r[k]["hull"] and r[k]["hull"][0] > 0 for k in ("a", "b"))
    ok = r["ok"] and away and r["d"].verdict == "covered"
    report(10, ok, f"generation hypotheses hold, coverage of {r['d'].target} "
                   f"after {r['d'].iterations} rounds")


def test_11_convergence():
    Rs = []
    for m in range(2, 6):
        d = distance_bound(build_generators(Params(m, 20)), 2 * m - 3)
        Rs.append(d.R)
    ok = all(R >= 2 * m - 3 for m, R in zip(range(2, 6), Rs)) and Rs == sorted(set(Rs))
    report(11, ok, "distance bounds " + ", ".join(f"m={m}: e^-{R}" for m, R in zip(range(2, 6), Rs)))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
