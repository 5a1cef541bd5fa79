"""Command line: build, evaluate, normalize, verify, search, plot.

Verification commands print JSON on stdout and a one-line summary on stderr.
Exit status is 0 on success, 1 when a check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .construct import (
    DEF_NAMES,
    ConstructionError,
    Params,
    build_generators,
    g0,
    g1,
    std_w,
    std_x,
    std_y,
    std_z,
)
from .dyadic import Dyadic
from .normalform import to_normal_form
from .plmap import Interval, PLMap, evaluate, support
from .verify import (
    ball_check,
    check_prop_i,
    check_prop_ii,
    coverage_check,
    def_maps,
    distance_bound,
    gen_lemma_check,
    lower_maps,
    ping_pong_certify,
    standard_marking,
    support_analysis,
    support_within,
    hull,
)
from .words import MARKING, ParseError, enumerate_reduced, parse, word_to_map
from .plot import plot_svg

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_STD = re.compile(r"^([xyzw])(\d+)$")
_LOWER_NAMES = {name.lower(): name for name in DEF_NAMES}


class UsageError(Exception):
    pass


def _emit(data) -> None:
    json.dump(data, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _params(args) -> Params:
    try:
        return Params(args.m, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def resolve_map(src: str, p: Params) -> PLMap:
    """A JSON file, a named element, or a word."""
    if os.path.exists(src):
        data = json.loads(Path(src).read_text())
        return PLMap.from_json(data)
    gens = build_generators(p)
    named = {"X0": gens.X0, "X1": gens.X1, "g0": g0(p), "g1": g1(p)}
    if src in named:
        return named[src]
    if src in DEF_NAMES:
        return def_maps(gens)[src]
    if src in _LOWER_NAMES:
        return lower_maps(p)[_LOWER_NAMES[src]]
    mt = _STD.match(src)
    if mt:
        kind, idx = mt.group(1), int(mt.group(2))
        return {"x": std_x, "y": std_y, "z": std_z, "w": std_w}[kind](idx)
    try:
        w = parse(src)
    except ParseError as exc:
        raise UsageError(f"cannot resolve map {src!r}: {exc}") from None
    if w.alphabet == MARKING:
        return word_to_map(w, gens.assignment)
    return word_to_map(w, {i: std_x(i) for i in {l.gen for l in w.letters}})


# -- subcommands --------------------------------------------------------------


def cmd_gens(args) -> int:
    gens = build_generators(_params(args))
    text = json.dumps(gens.to_json(), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        _say(f"wrote {args.out}")
    else:
        print(text)
    return EXIT_OK


def cmd_eval(args) -> int:
    f = resolve_map(args.map, _params(args))
    try:
        t = Dyadic.parse(args.at)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    img = evaluate(f, t)
    print(f"{img}  ({img.pretty()})")
    return EXIT_OK


def cmd_nf(args) -> int:
    try:
        w = parse(args.word)
        print(to_normal_form(w))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _params(args)
    gens = build_generators(p)
    parts = [s.strip() for s in args.parts.split(",") if s.strip()]
    unknown = set(parts) - {"i", "ii", "iii", "iv"}
    if unknown:
        raise UsageError(f"unknown parts: {', '.join(sorted(unknown))}")
    out = {"params": p.to_json()}
    ok = True
    if "i" in parts:
        r = check_prop_i(gens)
        out["i"] = r
        ok &= r["ok"]
    if "ii" in parts:
        r = check_prop_ii(gens)
        out["ii"] = r
        ok &= r["ok"]
    if "iii" in parts:
        r = ball_check(gens, p.n)
        out["iii"] = r.to_json()
        ok &= r.relation_free
    if "iv" in parts:
        r = gen_lemma_check(gens)
        out["iv"] = {
            "a": {"hull": _hull_json(r["a"]["hull"]), "ok": r["a"]["ok"]},
            "b": {"hull": _hull_json(r["b"]["hull"]), "ok": r["b"]["ok"]},
            "c": r["c"]["checks"],
            "d": r["d"].to_json(),
            "ok": r["ok"],
        }
        ok &= r["ok"]
    out["ok"] = ok
    _emit(out)
    _say(f"verify m={p.m} b={p.b} parts={','.join(parts)}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def _hull_json(h):
    return None if h is None else [str(h[0]), str(h[1])]


def cmd_ball(args) -> int:
    if args.len < 1:
        raise UsageError("--len must be at least 1")
    if args.standard:
        marking, p = standard_marking(), None
    else:
        p = _params(args)
        marking = build_generators(p)
    if args.certify == "pingpong":
        if p is None:
            raise UsageError("ping-pong certificates need the modified generators")
        return _ball_pingpong(marking, args.len)
    report = ball_check(marking, args.len, jobs=args.jobs)
    _emit(report.to_json())
    if report.relation_free:
        _say(f"no relation among {report.words_checked} reduced words of length <= {args.len}")
        return EXIT_OK
    _say(f"relation of length {len(report.shortest_relation)}: {report.shortest_relation}")
    return EXIT_FAIL


def _ball_pingpong(gens, L: int) -> int:
    certified = inconclusive = 0
    relation = None
    for w in enumerate_reduced(2, L, min_len=1):
        state = ping_pong_certify(gens, w)
        if state.certified:
            certified += 1
            continue
        inconclusive += 1
        if relation is None and word_to_map(w, gens.assignment).is_identity():
            relation = w
    out = {
        "checked_len": L,
        "words_checked": certified + inconclusive,
        "certified": certified,
        "inconclusive_brute_checked": inconclusive,
        "shortest_relation": None if relation is None else {"length": len(relation), "word": str(relation)},
    }
    _emit(out)
    _say(f"ping-pong certified {certified}, brute-forced {inconclusive}")
    return EXIT_OK if relation is None else EXIT_FAIL


def cmd_support(args) -> int:
    p = _params(args)
    f = resolve_map(args.word, p)
    above = support_within(f, Interval.open(p.b - 5))
    h = hull(above)
    table = {
        "word": args.word,
        "params": p.to_json(),
        "support": [str(c) for c in support(f)],
        "above_b_minus_5": [str(c) for c in above],
        "hull_above_b_minus_5": None if h is None else str(h),
    }
    if args.word in ("C", "S", "T", "Sigma", "Theta"):
        entry = support_analysis(build_generators(p))[args.word]
        table["matches_expected"] = entry["match"]
    _emit(table)
    return EXIT_OK


def cmd_cover(args) -> int:
    p = _params(args)
    try:
        r = coverage_check(build_generators(p), args.delta, args.upto, max_iter=args.max_iter)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(r.to_json())
    _say(f"coverage of {r.target}: {r.verdict} after {r.iterations} rounds")
    return EXIT_OK if r.ok else EXIT_FAIL


def cmd_distance(args) -> int:
    if args.max_len < 1:
        raise UsageError("--max-len must be at least 1")
    marking = standard_marking() if args.standard else build_generators(_params(args))
    d = distance_bound(marking, args.max_len, jobs=args.jobs)
    _emit(d.to_json())
    _say(f"distance to the free 2-marking <= {d}")
    return EXIT_OK


def cmd_plot(args) -> int:
    f = resolve_map(args.map, _params(args))
    Path(args.out).write_text(plot_svg(f, title=args.map))
    _say(f"wrote {args.out}")
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _add_params(sp) -> None:
    sp.add_argument("--m", type=int, default=5, help="number of period-4 blocks (default 5)")
    sp.add_argument("--b", type=int, default=20, help="start of the block chain (default 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thompsonf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gens", help="emit the generator pair as JSON")
    _add_params(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_gens)

    sp = sub.add_parser("eval", help="evaluate a map at a dyadic point")
    _add_params(sp)
    sp.add_argument("--map", required=True, help="JSON file, element name, or word")
    sp.add_argument("--at", required=True)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("nf", help="normal form of a word over x0, x1, ...")
    sp.add_argument("word")
    sp.set_defaults(func=cmd_nf)

    sp = sub.add_parser("verify", help="check parts of the proposition for one instance")
    _add_params(sp)
    sp.add_argument("--parts", default="i,ii,iv")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ball", help="search the free ball for relations")
    _add_params(sp)
    sp.add_argument("--len", type=int, required=True)
    sp.add_argument("--certify", choices=("brute", "pingpong"), default="brute")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--standard", action="store_true", help="use the marking (x0, x1)")
    sp.set_defaults(func=cmd_ball)

    sp = sub.add_parser("support", help="support of a named element")
    _add_params(sp)
    sp.add_argument("--word", required=True)
    sp.set_defaults(func=cmd_support)

    sp = sub.add_parser("cover", help="coverage of (delta, N] by translates of (1, 3)")
    _add_params(sp)
    sp.add_argument("--delta", default="1/2^20")
    sp.add_argument("--upto", default="60")
    sp.add_argument("--max-iter", type=int, default=1000)
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("distance", help="upper bound on the distance to the free marking")
    _add_params(sp)
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--standard", action="store_true")
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("plot", help="SVG graph of a map")
    _add_params(sp)
    sp.add_argument("--map", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_plot)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _say(f"error: {exc}")
        return EXIT_USAGE
    except ConstructionError as exc:
        _emit({"ok": False, "construction_error": str(exc)})
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
