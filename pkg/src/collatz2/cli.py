"""Command-line entry point: ``collatz2 <subcommand> ...``.

Exit codes: 0 success, 1 verification failure or engine error, 2 bad flags.
Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import persistence
from .collatz3 import build_collatz3_direct, check_equivalence
from .core import DEFAULT_BUDGET
from .cycles import cycle_divisor_bound, pq_bounds
from .errors import CollatzError
from .levels import build_levels, query
from .stats import ALL_LEMMAS, decade_checkpoints, stats_series, verify_lemmas

QUERY_HELP = """\
Print touch, level, s, e and max for N, one key=value per line.

s counts applications of the map, so s(4) = 2 (4 -> 2 -> 1). The worked
example this construction comes from prints s(4) = 3; touch, level and e
agree with it (touch(4) = 7, level(4) = 3, e(4) = 0).
"""


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def int_list(text: str) -> list[int]:
    return [positive_int(t) for t in text.split(",") if t.strip()]


def _engine_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--max", dest="max_n", type=positive_int, required=required,
                   help="build levels for starters 1..MAX")
    p.add_argument("--dense-cap", type=positive_int, default=None,
                   help="bitmap range of the seen set (default 8*MAX)")
    p.add_argument("--budget", type=positive_int, default=DEFAULT_BUDGET,
                   help="element cap for a single level (default %(default)s)")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="collatz2",
                                     description="Collatz level decomposition toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct levels and optionally export them")
    _engine_flags(p)
    p.add_argument("--retain", action="store_true", help="keep per-level element lists")
    p.add_argument("--out", help="export path")
    p.add_argument("--format", choices=persistence.FORMATS, default="csv")

    p = sub.add_parser("query", help="per-number statistics", description=QUERY_HELP,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("n", type=positive_int)
    _engine_flags(p, required=False)
    p.add_argument("--in", dest="inp", help="load a levels export instead of building")
    p.add_argument("--format", choices=persistence.FORMATS, default="csv",
                   help="format of --in")

    p = sub.add_parser("verify", help="run the lemma suite")
    _engine_flags(p)
    p.add_argument("--lemmas", type=int_list, default=list(ALL_LEMMAS),
                   help="comma-separated lemma ids (default 1-9)")

    p = sub.add_parser("stats", help="export the nz/z ratio series")
    _engine_flags(p)
    p.add_argument("--checkpoints", type=int_list, default=None,
                   help="comma-separated n values (default powers of ten and MAX)")
    p.add_argument("--out", help="CSV path (default stdout)")

    p = sub.add_parser("collatz3", help="check the odd-compressed routes agree")
    _engine_flags(p)

    p = sub.add_parser("cycle-bounds", help="hypothetical-cycle bounds")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--odd-steps", type=positive_int, help="print sum_k_min")
    g.add_argument("--level-size", type=positive_int, help="print p_max and q_min")

    sub.add_parser("crosscheck", help="compare trajectories with the OEIS fixture")
    return parser


def _build(args, retain: bool = False):
    return build_levels(args.max_n, dense_cap=args.dense_cap, budget=args.budget,
                        retain_elements=retain)


def cmd_build(args, parser) -> int:
    if args.format == "jsonl" and args.out and not args.retain:
        parser.error("--format jsonl needs --retain")
    table = _build(args, args.retain)
    print(f"bound={table.bound}")
    print(f"starters={sum(1 for x in range(1, table.bound + 1) if table.e[x])}")
    print(f"sum_e={table.cum_e[table.bound]}")
    print(f"maximal={table.maximal_prefix[table.bound]}")
    if args.out:
        count = persistence.export_levels(table, args.out, args.format)
        print(f"written={count}")
    return 0


def cmd_query(args, parser) -> int:
    if args.inp:
        table = persistence.import_levels(args.inp, args.format)
    else:
        if args.max_n is None:
            parser.error("query needs --max or --in")
        table = _build(args)
    if args.n > table.bound:
        parser.error(f"{args.n} is above the table bound {table.bound}")
    q = query(table, args.n)
    print(f"touch={q.touch}")
    print(f"level={q.level}")
    print(f"s={q.s}")
    print(f"e={q.e}")
    print(f"max={q.max_of_level}")
    return 0


def cmd_verify(args, parser) -> int:
    bad = [i for i in args.lemmas if i not in ALL_LEMMAS]
    if bad:
        parser.error(f"unknown lemma ids {bad}")
    table = _build(args, retain=True)
    report = verify_lemmas(table, args.max_n, args.lemmas)
    for line in report.lines():
        print(line)
    return 0 if report.verified_clean else 1


def cmd_stats(args, parser) -> int:
    points = args.checkpoints or decade_checkpoints(args.max_n)
    if points != sorted(set(points)):
        parser.error("checkpoints must be strictly increasing")
    if points[-1] > args.max_n:
        parser.error("checkpoints must not exceed --max")
    series = stats_series(_build(args), points)
    lines = persistence.stats_csv_lines(series)
    if args.out:
        persistence.export_stats(series, args.out)
        print(f"written={len(series.rows)}")
    else:
        print("\n".join(lines))
    return 0


def cmd_collatz3(args, parser) -> int:
    table = _build(args, retain=True)
    direct = build_collatz3_direct(args.max_n, dense_cap=args.dense_cap, budget=args.budget)
    report = check_equivalence(table, args.max_n, direct)
    print(f"agree={str(report.agree).lower()}")
    if not report.agree:
        print(f"first_mismatch={report.first_mismatch}")
        return 1
    return 0


def cmd_cycle_bounds(args, parser) -> int:
    if args.odd_steps is not None:
        print(f"sum_k_min={cycle_divisor_bound(args.odd_steps)}")
    else:
        if args.level_size < 2:
            parser.error("--level-size must be >= 2")
        p_max, q_min = pq_bounds(args.level_size)
        print(f"p_max={p_max}")
        print(f"q_min={q_min}")
    return 0


def cmd_crosscheck(args, parser) -> int:
    report = persistence.oeis_crosscheck()
    print(f"checked={report.checked}")
    print(f"mismatches={','.join(map(str, report.mismatches))}")
    return 1 if report.mismatches else 0


COMMANDS = {
    "build": cmd_build,
    "query": cmd_query,
    "verify": cmd_verify,
    "stats": cmd_stats,
    "collatz3": cmd_collatz3,
    "cycle-bounds": cmd_cycle_bounds,
    "crosscheck": cmd_crosscheck,
}


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (CollatzError, OSError) as exc:
        print(f"collatz2: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
