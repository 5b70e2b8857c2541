"""Prediction versus detection for single games and parameter scans."""

from __future__ import annotations

import itertools
import json
import os
import sys
import time
from collections import Counter
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from ..closed_form import (
    EXACT,
    NONE,
    Prediction,
    conjecture_hypotheses,
    g_bound,
    multitransfer_period,
    predict,
    two_move_period,
)
from ..game import BudgetError, GameError, LengyelParams, compute_sg_table, vertical_step
from ..periodicity import (
    DEFAULT_MAX_COLUMNS,
    PeriodicityError,
    PeriodReport,
    StructureReport,
    check_nim_periodic_in,
    detect_horizontal_period,
    stream_period,
    structure_report,
)
from .render import SCHEMA
from .spec import ParsedSpec, parse_full

EXACT_MATCH = "exact-match"
DIVISOR_OK = "divisor-ok"
MISMATCH = "mismatch"
UNDECIDED = "undecided"
AGREEMENTS = (EXACT_MATCH, DIVISOR_OK, MISMATCH, UNDECIDED)

DEFAULT_SCAN_BOUND = 8
PAPER_SCAN_BOUND = 20


@dataclass
class ScanResult:
    spec: str
    prediction: Prediction
    detected: Optional[PeriodReport]
    structure: Optional[StructureReport]
    agreement: str
    wall_time: float
    reason: str = ""

    def as_dict(self, timing: bool = True) -> dict:
        doc = {
            "schema": SCHEMA,
            "spec": self.spec,
            "prediction": self.prediction.as_dict(),
            "detected": None if self.detected is None else self.detected.as_dict(),
            "structure": None if self.structure is None else self.structure.as_dict(),
            "agreement": self.agreement,
            "reason": self.reason,
        }
        if timing:
            doc["wall_time"] = round(self.wall_time, 6)
        return doc


def prediction_for(parsed: ParsedSpec) -> Prediction:
    if parsed.kind == "L":
        return predict(LengyelParams(*parsed.args))
    if parsed.kind == "L2":
        b, x1, y1 = parsed.args
        hp, vp = two_move_period(b, x1, y1)
        return Prediction(EXACT, "Zeroeth Main Theorem", 0, hp, vp)
    if parsed.kind == "Lstar":
        a, b, c = parsed.args
        if a == b == c and b >= 2:
            return Prediction(EXACT, "Lstar(b,b,b) period b+2", 0, multitransfer_period(b), 2 * b)
    return Prediction(NONE, "no closed form for this game")


def default_window(parsed: ParsedSpec) -> tuple[int, int]:
    rules = parsed.rules
    reach = max((-u[0] for u in rules.moves if u[0] < 0), default=1)
    b = max((-u[1] for u in rules.moves if u[0] == 0), default=1)
    width = 64
    if parsed.kind == "L":
        width = max(4 * g_bound(LengyelParams(*parsed.args)) + 4 * reach, 64)
    return width, max(4 * b, 2)


def classify(pred: Prediction, det: Optional[PeriodReport]) -> tuple[str, str]:
    if det is None:
        return UNDECIDED, "no period detected"
    if not det.certified:
        return UNDECIDED, f"period not certified ({det.certificate})"
    if pred.is_exact:
        same = (
            pred.horizontal_period == det.horizontal_period
            and pred.vertical_period == det.vertical_period
            and (pred.preperiod is None or pred.preperiod == det.preperiod)
        )
        return (EXACT_MATCH, "") if same else (MISMATCH, "exact prediction differs from detection")
    if pred.divisor_bound is not None:
        if pred.divisor_bound % det.horizontal_period == 0:
            return DIVISOR_OK, ""
        return MISMATCH, f"period {det.horizontal_period} does not divide g = {pred.divisor_bound}"
    return UNDECIDED, "detected, but nothing was predicted"


def analyze(
    spec: str,
    width: Optional[int] = None,
    height: Optional[int] = None,
    max_columns: int = DEFAULT_MAX_COLUMNS,
) -> ScanResult:
    start = time.perf_counter()
    parsed = parse_full(spec)
    rules = parsed.rules
    pred = prediction_for(parsed)
    dw, dh = default_window(parsed) if rules.dimension == 2 else (1, 1)
    w, h = width or dw, height or dh

    def done(det, struct, agreement=None, reason=""):
        if agreement is None:
            agreement, reason = classify(pred, det)
        return ScanResult(rules.label, pred, det, struct, agreement, time.perf_counter() - start, reason)

    if rules.dimension != 2:
        return done(None, None, UNDECIDED, f"period detection needs a 2-D game, got dimension {rules.dimension}")

    det = struct = None
    try:
        table = compute_sg_table(rules, (w, h))
        struct = structure_report(table)
        b = vertical_step(rules)
        if b is not None:
            det, _ = stream_period(rules, max_columns)
            return done(det, struct)
        # unrestricted rules: test nim-periodicity along the vertical move, if any
        verticals = [u for u in rules.moves if u[0] == 0]
        if not verticals:
            return done(None, struct, UNDECIDED, "no (0,-b) move; nim-periodicity does not apply")
        move = verticals[0]
        ok, where = check_nim_periodic_in(table, move)
        struct.nim_periodic, struct.nim_counterexample = ok, where
        if not ok:
            return done(None, struct, UNDECIDED, f"not nim-periodic along {move}: first failure at column {where[0]}")
        det = detect_horizontal_period(table, -move[1])
        return done(det, struct)
    except (BudgetError, PeriodicityError) as exc:
        return done(det, struct, UNDECIDED, f"{type(exc).__name__}: {exc}")


# -- scans ------------------------------------------------------------------


@dataclass(frozen=True)
class Ranges:
    """Inclusive ranges; a ``None`` y-range means 0..2b-1 for each b."""

    b: tuple[int, int]
    x1: tuple[int, int]
    x2: tuple[int, int]
    y1: Optional[tuple[int, int]] = None
    y2: Optional[tuple[int, int]] = None


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo = hi = text
    try:
        return int(lo), int(hi)
    except ValueError:
        raise ValueError(f"bad range {text!r}; expected A..B") from None


def _span(r: tuple[int, int]) -> range:
    return range(r[0], r[1] + 1)


def iter_games(ranges: Ranges, conjecture_filter: bool = False) -> Iterator[LengyelParams]:
    for b in _span(ranges.b):
        ys1 = _span(ranges.y1) if ranges.y1 else range(2 * b)
        ys2 = _span(ranges.y2) if ranges.y2 else range(2 * b)
        for x1, y1, x2, y2 in itertools.product(_span(ranges.x1), ys1, _span(ranges.x2), ys2):
            try:
                p = LengyelParams(b, x1, y1, x2, y2)
            except GameError:
                continue
            if conjecture_filter and not conjecture_hypotheses(p):
                continue
            yield p


def _analyze_label(label: str) -> ScanResult:
    return analyze(label)


def _existing(path: str) -> dict[str, str]:
    seen: dict[str, str] = {}
    if not os.path.exists(path):
        return seen
    with open(path) as fh:
        for line in fh:
            try:
                doc = json.loads(line)
            except json.JSONDecodeError:
                break  # torn final line from an interrupted run
            seen[doc["spec"]] = doc["agreement"]
    return seen


def _trim_torn_tail(path: str) -> None:
    if not os.path.exists(path):
        return
    with open(path, "rb+") as fh:
        data = fh.read()
        cut = data.rfind(b"\n") + 1
        if cut != len(data):
            fh.truncate(cut)


def scan(
    ranges: Ranges,
    out: str,
    conjecture_filter: bool = False,
    jobs: int = 1,
    timing: bool = True,
) -> Counter:
    """Append one NDJSON ScanResult per game to ``out``, skipping specs already there."""
    _trim_torn_tail(out)
    seen = _existing(out)
    tally: Counter = Counter({a: 0 for a in AGREEMENTS})
    todo = []
    for p in iter_games(ranges, conjecture_filter):
        if p.label in seen:
            tally[seen[p.label]] += 1
        else:
            todo.append(p.label)
    with open(out, "a") as fh:
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(jobs) as pool:
                results: Iterable[ScanResult] = pool.map(_analyze_label, todo, chunksize=8)
                _emit(results, fh, tally, timing)
        else:
            _emit(map(_analyze_label, todo), fh, tally, timing)
    return tally


def _emit(results: Iterable[ScanResult], fh, tally: Counter, timing: bool) -> None:
    # pool.map yields in submission order, so the file order is the range order
    for res in results:
        fh.write(json.dumps(res.as_dict(timing)) + "\n")
        fh.flush()
        tally[res.agreement] += 1


def exit_code(agreements: Sequence[str] | Counter) -> int:
    counts = agreements if isinstance(agreements, Counter) else Counter(agreements)
    if counts.get(MISMATCH, 0):
        return 1
    if counts.get(UNDECIDED, 0):
        return 2
    return 0


def warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)
