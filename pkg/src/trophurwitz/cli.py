"""Command line front end.

    trophurwitz hurwitz -d 3 -u 3 -v 3 -w 3 -r 0
    trophurwitz tropical-degree -d 4 -u 2,2 -v 4 -w 4 -r 2 --config "u:1;v:2;w:"
    trophurwitz enumerate -d 5 -u 3,1,1 -v 5 -w 3,2 -g 1 --config u:1 --dot-dir out/
    trophurwitz resolve-star -d 5 -u 3,1,1 -v 5 -w 3,2 -g 1
    trophurwitz verify -d 4 -u 2,2 -v 4 -w 4 -r 2

Exit status: 0 on success, 1 for invalid input, 2 when an internal identity fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import cover_graph as cg
from .enumeration import (
    BranchConfiguration,
    all_configurations,
    degree_report,
    enumerate_covers,
    invariance_check,
    marked_profile,
    resolve_star,
    star_cover,
)
from .exceptions import InvariantError
from .hurwitz_oracle import HurwitzQuery, format_fraction, hurwitz_marked, hurwitz_unmarked
from .moduli import cell_contribution, short_key
from .symmetric_group import MarkedPartition


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def parse_partition(text: str, prefix: str) -> MarkedPartition:
    """``3,1,1`` or ``3:a,1:b,1:c``; unmarked parts get ``prefix1``, ``prefix2``, ..."""
    parts = []
    for i, item in enumerate(filter(None, (s.strip() for s in text.split(","))), start=1):
        size, sep, mark = item.partition(":")
        try:
            n = int(size)
        except ValueError:
            raise UsageError(f"bad part {item!r} in {text!r}") from None
        parts.append((n, mark.strip() if sep else f"{prefix}{i}"))
    if not parts:
        raise UsageError(f"empty partition for ray {prefix}")
    return MarkedPartition(tuple(parts))


def _query(args):
    """Marked profile, genus and r from the common flags."""
    prof = marked_profile(tuple(parse_partition(getattr(args, x), x) for x in "uvw"))
    for p in prof:
        if p.total != args.d:
            raise UsageError(f"partition {list(p.sizes)} does not total d={args.d}")
    n = sum(len(p) for p in prof)
    if args.g is not None:
        if args.g < 0:
            raise UsageError("genus must be >= 0")
        g, r = Fraction(args.g), 2 * args.g - 2 - args.d + n
    else:
        if args.r < 0:
            raise UsageError("r must be >= 0")
        g, r = Fraction(2 + args.d + args.r - n, 2), args.r
    return prof, g, r


def _cover_query(args):
    prof, g, r = _query(args)
    if g.denominator != 1 or g < 0:
        raise UsageError(f"no integral genus >= 0 for r={r}: Riemann-Hurwitz gives g={g}")
    if r < 0:
        raise UsageError(f"no cover: Riemann-Hurwitz gives r={r}")
    return prof, int(g), r


def _config(args, r: int) -> BranchConfiguration:
    cfg = BranchConfiguration.parse(args.config) if args.config else BranchConfiguration(tuple(range(1, r + 1)))
    if cfg.r != r:
        raise UsageError(f"configuration has {cfg.r} labels, expected r={r}")
    return cfg


def _emit_json(data, target: str) -> None:
    text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


# -- verbs -------------------------------------------------------------------


def cmd_hurwitz(args) -> None:
    prof, g, r = _query(args)
    sizes = tuple(p.sizes for p in prof)
    if r < 0:
        marked = unmarked = Fraction(0)
    else:
        q = HurwitzQuery(args.d, sizes, r)
        unmarked, marked = hurwitz_unmarked(q), hurwitz_marked(q)
    if args.json:
        _emit_json({"d": args.d, "profile": [list(s) for s in sizes], "g": format_fraction(g), "r": r,
                    "unmarked": format_fraction(unmarked), "marked": format_fraction(marked)}, args.json)
        return
    print(f"unmarked {format_fraction(unmarked)}, marked {format_fraction(marked)}, "
          f"g={format_fraction(g)}, r={r}")


def cmd_tropical_degree(args) -> None:
    prof, g, r = _cover_query(args)
    report = degree_report(args.d, prof, g, _config(args, r))
    if args.csv:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(report.csv_rows())
        if args.csv == "-":
            sys.stdout.write(buf.getvalue())
        else:
            Path(args.csv).write_text(buf.getvalue())
    if args.json:
        _emit_json(report.to_json(with_equations=args.dump_equations), args.json)
    if "-" not in (args.json, args.csv):
        print(f"config {report.config}")
        for c in report.cells:
            line = f"  {short_key(c.key)}  k={c.wieners} I={c.index} prod_w={c.edge_product} " \
                   f"contribution={format_fraction(c.contribution)}"
            print(line)
            if args.dump_equations:
                print(f"    equations {json.dumps([list(row) for row in c.equations])}")
        print(f"degree {format_fraction(report.degree)}")


def cmd_enumerate(args) -> None:
    prof, g, r = _cover_query(args)
    cfg = _config(args, r)
    covers = enumerate_covers(args.d, prof, g, cfg)
    rows = [(short_key(cg.canonical_key(c)), c, cell_contribution(c)) for c in covers]
    if args.dot_dir:
        out = Path(args.dot_dir)
        out.mkdir(parents=True, exist_ok=True)
        for key, c, _ in rows:
            (out / f"cover_{key}.dot").write_text(cg.to_dot(c, name=key))
    if args.json:
        _emit_json({"config": cfg.to_json(),
                    "covers": [{"key": k, "contribution": format_fraction(v), "cover": cg.to_json(c)}
                               for k, c, v in rows]}, args.json)
        return
    print(f"{len(rows)} trivalent types over {cfg}")
    for key, c, value in rows:
        print(f"  {key}  vertices={len(c.vertices)} edges={len(c.edges)} contribution={format_fraction(value)}")


def cmd_resolve_star(args) -> None:
    prof, g, r = _cover_query(args)
    if r != 1:
        raise UsageError(f"resolve-star needs exactly one simple branch point, got r={r}")
    table = resolve_star(star_cover(args.d, prof, g))
    sums = {ray.value: sum((v for _, v in rows), Fraction(0)) for ray, rows in table.items()}
    if args.json:
        _emit_json({"rays": {ray.value: [{"key": short_key(cg.canonical_key(c)),
                                          "contribution": format_fraction(v)} for c, v in rows]
                             for ray, rows in table.items()},
                    "sums": {k: format_fraction(v) for k, v in sums.items()}, "verdict": "OK"}, args.json)
        return
    for ray, rows in table.items():
        values = " + ".join(format_fraction(v) for _, v in rows) or "0"
        print(f"{ray.value}: {values} = {format_fraction(sums[ray.value])}")
    print("verdict OK: the three sums agree")


def cmd_verify(args) -> None:
    prof, g, r = _cover_query(args)
    if args.config:
        cfgs = [BranchConfiguration.parse(c) for c in args.config]
        if any(c.r != r for c in cfgs):
            raise UsageError(f"every configuration needs r={r} labels")
    else:
        # for r = 1 these are exactly the three single-ray placements
        cfgs = all_configurations(r)
    report = invariance_check(args.d, prof, g, cfgs, jobs=args.jobs)
    algebraic = hurwitz_marked(HurwitzQuery(args.d, tuple(p.sizes for p in prof), r))
    agree = report.all_equal and report.swap_consistent and report.degree == algebraic
    if args.json:
        _emit_json({"degrees": [{"config": str(c), "degree": format_fraction(v)} for c, v in report.degrees],
                    "all_equal": report.all_equal, "swap_consistent": report.swap_consistent,
                    "algebraic": format_fraction(algebraic), "verdict": "OK" if agree else "FAIL"}, args.json)
    else:
        for c, v in report.degrees:
            print(f"{c}  {format_fraction(v)}")
        print(f"algebraic {format_fraction(algebraic)}")
        print(f"verdict {'OK' if agree else 'FAIL'}")
    if not agree:
        raise InvariantError("tropical degrees are not constant or differ from the algebraic count")


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trophurwitz", description="Tropical and algebraic triple Hurwitz numbers.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("-d", type=int, required=True, help="degree")
        p.add_argument("-u", required=True, help="profile over u, e.g. 3,1,1 or 3:a,1:b,1:c")
        p.add_argument("-v", required=True, help="profile over v")
        p.add_argument("-w", required=True, help="profile over w")
        which = p.add_mutually_exclusive_group(required=True)
        which.add_argument("-g", type=int, help="genus")
        which.add_argument("-r", type=int, help="number of simple branch points")
        p.add_argument("--json", nargs="?", const="-", metavar="PATH", help="emit JSON (stdout by default)")
        return p

    p = common(sub.add_parser("hurwitz", help="algebraic Hurwitz number by monodromy count"))
    p.set_defaults(func=cmd_hurwitz)

    for verb, func, text in (("tropical-degree", cmd_tropical_degree, "degree of the tropical branch map"),
                             ("enumerate", cmd_enumerate, "list trivalent types over a configuration")):
        p = common(sub.add_parser(verb, help=text))
        p.add_argument("--config", help='label placement, e.g. "u:1;v:;w:2,3" (default: all on u)')
        p.add_argument("--dump-equations", action="store_true", help="include the cycle equations")
        p.set_defaults(func=func)
    sub.choices["tropical-degree"].add_argument("--csv", metavar="PATH", help="CSV summary ('-' for stdout)")
    sub.choices["enumerate"].add_argument("--dot-dir", metavar="DIR", help="write one DOT file per type")

    p = common(sub.add_parser("resolve-star", help="the three resolutions of a one-label star cover"))
    p.set_defaults(func=cmd_resolve_star)

    p = common(sub.add_parser("verify", help="degree invariance across configurations"))
    p.add_argument("--config", action="append", help="configuration to include (repeatable)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
