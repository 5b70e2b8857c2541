"""Command-line front end: ``grundy sg|analyze|scan|figure``.

Exit codes: 0 everything passed or matched, 1 a mismatch (or failing
figure) was found, 2 some result was undecided, 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from ..game import BudgetError, GameError, compute_sg_table
from .figures import UnknownFigure, reproduce_figure
from .harness import (
    DEFAULT_SCAN_BOUND,
    PAPER_SCAN_BOUND,
    Ranges,
    analyze,
    exit_code,
    parse_range,
    scan,
    warn,
)
from .render import FORMATS, render_table
from .spec import SpecError, parse_spec

__all__ = ["main", "parse_spec", "render_table", "analyze", "scan", "reproduce_figure"]

USAGE_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _range(text: str) -> tuple[int, int]:
    try:
        return parse_range(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="grundy", description="Sprague-Grundy tables and periods of vector games.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sg = sub.add_parser("sg", help="print the SG table of a game")
    sg.add_argument("spec")
    sg.add_argument("--width", type=int, required=True)
    sg.add_argument("--height", type=int, required=True)
    sg.add_argument("--format", choices=FORMATS, default="ascii")

    an = sub.add_parser("analyze", help="compare the predicted and detected period of a game")
    an.add_argument("spec")
    an.add_argument("--width", type=int)
    an.add_argument("--height", type=int)
    an.add_argument("--format", choices=("json", "text"), default="json")

    sc = sub.add_parser("scan", help="analyze every Lengyel game in a parameter box")
    for name in ("b", "x1", "y1", "x2", "y2"):
        sc.add_argument(f"--{name}", type=_range, metavar="A..B")
    sc.add_argument("--conjecture-filter", action="store_true",
                    help="keep only games meeting the hypotheses of the period-g conjecture")
    sc.add_argument("--paper-bound", action="store_true",
                    help=f"default ranges go up to {PAPER_SCAN_BOUND} instead of {DEFAULT_SCAN_BOUND}")
    sc.add_argument("--jobs", type=int, default=1)
    sc.add_argument("--no-timing", action="store_true", help="omit wall_time fields")
    sc.add_argument("--out", required=True)

    fig = sub.add_parser("figure", help="recompute a printed table and compare it with the golden copy")
    fig.add_argument("id", type=int)
    return ap


def _cmd_sg(args) -> int:
    rules = parse_spec(args.spec)
    table = compute_sg_table(rules, (args.width, args.height))
    sys.stdout.write(render_table(table, args.format))
    return 0


def _cmd_analyze(args) -> int:
    res = analyze(args.spec, args.width, args.height)
    if args.format == "json":
        print(json.dumps(res.as_dict()))
    else:
        det = res.detected
        found = "-" if det is None else f"({det.preperiod}, {det.horizontal_period}, {det.vertical_period})"
        print(f"{res.spec}: {res.agreement}; predicted {res.prediction.provenance}; detected {found}")
        if res.reason:
            print(f"  {res.reason}")
    return exit_code([res.agreement])


def _cmd_scan(args) -> int:
    hi = PAPER_SCAN_BOUND if args.paper_bound else DEFAULT_SCAN_BOUND
    if args.paper_bound:
        warn(f"ranges up to {hi} take many hours; results are appended as they finish")
    ranges = Ranges(
        b=args.b or (1, hi),
        x1=args.x1 or (1, hi),
        x2=args.x2 or (1, hi),
        y1=args.y1,
        y2=args.y2,
    )
    tally = scan(ranges, args.out, args.conjecture_filter, args.jobs, timing=not args.no_timing)
    print(json.dumps(dict(tally)))
    return exit_code(tally)


def _cmd_figure(args) -> int:
    check = reproduce_figure(args.id)
    sys.stdout.write(check.report())
    return 0 if check.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"sg": _cmd_sg, "analyze": _cmd_analyze, "scan": _cmd_scan, "figure": _cmd_figure}
    try:
        return handler[args.command](args)
    except (SpecError, UnknownFigure) as exc:
        print(f"grundy: {exc.args[0] if isinstance(exc, KeyError) else exc}", file=sys.stderr)
        return USAGE_ERROR
    except BudgetError as exc:
        print(f"grundy: {exc}", file=sys.stderr)
        return 2
    except (GameError, OSError) as exc:
        # bad game parameters or an unwritable output path
        print(f"grundy: {exc}", file=sys.stderr)
        return USAGE_ERROR
