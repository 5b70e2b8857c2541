"""Periodicity detection and certification on Sprague-Grundy tables.

Most checks here take a finished :class:`~grundy.game.SGTable`.  The one
exception is :func:`find_period`, which streams columns from the periodic
kernel until the state of the last ``M`` columns repeats; that repetition is
a proof of eventual periodicity because every column of a game of the form
{(0,-b)} plus upward transfers is a function of the previous ``M`` columns.
"""

from __future__ import annotations

from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .game import (
    GameRules,
    LengyelParams,
    Position,
    SGTable,
    iter_periodic_columns,
    sg_star,
    vertical_step,
)

DEFAULT_MAX_COLUMNS = 20_000


class PeriodicityError(RuntimeError):
    """A precondition of a periodicity check does not hold."""


class WindowTooSmall(PeriodicityError):
    pass


class PeriodNotFound(PeriodicityError):
    """No repeated column state occurred within the budget."""


@dataclass(frozen=True)
class PeriodReport:
    preperiod: int
    horizontal_period: int
    vertical_period: int
    certified: bool
    certificate: str
    window_used: tuple[int, int]

    def as_dict(self) -> dict:
        return {
            "preperiod": self.preperiod,
            "horizontal_period": self.horizontal_period,
            "vertical_period": self.vertical_period,
            "certified": self.certified,
            "certificate": self.certificate,
            "window_used": list(self.window_used),
        }


@dataclass
class StructureReport:
    nim_periodic: bool
    two_columns: set[int] = field(default_factory=set)
    two_block_rule_holds: Optional[bool] = None
    row_parity_holds: Optional[bool] = None
    bad_pairs: list[tuple[Position, Position]] = field(default_factory=list)
    chains: list[tuple[Position, tuple[int, int], int]] = field(default_factory=list)
    diagonally_periodic_after: Optional[int] = None
    nim_counterexample: Optional[Position] = None

    def as_dict(self) -> dict:
        return {
            "nim_periodic": self.nim_periodic,
            "nim_counterexample": _listify(self.nim_counterexample),
            "two_columns": sorted(self.two_columns),
            "two_block_rule_holds": self.two_block_rule_holds,
            "row_parity_holds": self.row_parity_holds,
            "bad_pairs": [[list(a), list(b)] for a, b in self.bad_pairs],
            "chains": [[list(s), list(d), n] for s, d, n in self.chains],
            "diagonally_periodic_after": self.diagonally_periodic_after,
        }


def _listify(pos):
    return None if pos is None else list(pos)


def _lengyel_params(table: SGTable, params: Optional[LengyelParams]) -> LengyelParams:
    params = params or table.rules.params
    if params is None:
        raise PeriodicityError(f"{table.rules.label} is not a Lengyel transfer game")
    return params


# -- nim-periodicity -------------------------------------------------------


def check_nim_periodic_in(table: SGTable, move: Sequence[int]) -> tuple[bool, Optional[Position]]:
    """Check SG(pos + move) == SG(pos) XOR 1 wherever both lie in the table.

    Returns ``(ok, first_violation)`` where the violation is the
    lexicographically least ``pos`` for which the identity fails.
    """
    vals = table.values.astype(np.int64)
    src = []
    dst = []
    for n, c in zip(table.shape, move):
        lo = max(0, -c)
        hi = min(n, n - c)
        if lo >= hi:
            return True, None
        src.append(slice(lo, hi))
        dst.append(slice(lo + c, hi + c))
    bad = vals[tuple(dst)] != (vals[tuple(src)] ^ 1)
    if not bad.any():
        return True, None
    idx = np.argwhere(bad)
    first = min(tuple(int(i) for i in row) for row in idx)
    return False, tuple(first[k] + src[k].start for k in range(len(first)))


def check_nim_periodicity(table: SGTable, b: int) -> tuple[bool, Optional[Position]]:
    """SG(x, y+b) == SG(x, y) XOR 1 on the whole 2-D window."""
    if table.rules.dimension != 2:
        raise PeriodicityError("nim-periodicity in (0,-b) is a 2-D check")
    if table.height < b + 1:
        raise WindowTooSmall(f"height {table.height} < b+1 = {b + 1}")
    ok, pos = check_nim_periodic_in(table, (0, -b))
    if ok:
        return True, None
    # report the lower cell (x, y) of the failing pair (x, y), (x, y+b)
    return False, (pos[0], pos[1] - b)


def nim_periodic_move_indices(rules: GameRules) -> set[int]:
    """Indices of moves -c*e_k such that every other move is >= 0 at coordinate k."""
    out = set()
    for i, u in enumerate(rules.moves):
        support = [k for k, c in enumerate(u) if c != 0]
        if len(support) != 1 or u[support[0]] >= 0:
            continue
        k = support[0]
        if all(v[k] >= 0 for j, v in enumerate(rules.moves) if j != i):
            out.add(i)
    return out


def max_value_bound(rules: GameRules) -> int:
    free = len(rules.moves) - len(nim_periodic_move_indices(rules))
    return max(free, free ^ 1)


# -- horizontal period -----------------------------------------------------


def _transfer_reach(rules: GameRules) -> int:
    return max((-u[0] for u in rules.moves if u[0] < 0), default=1)


def _first_state_repeat(fps: Sequence[Hashable], m: int) -> Optional[tuple[int, int]]:
    """Return (x_first, x_repeat) for the first repeated m-column state."""
    seen: dict[tuple, int] = {}
    for x in range(m - 1, len(fps)):
        state = tuple(fps[x - m + 1 : x + 1])
        if state in seen:
            return seen[state], x
        seen[state] = x
    return None


def _minimal_preperiod(fps: Sequence[Hashable], start: int, p: int) -> int:
    s = start
    while s > 0 and fps[s - 1] == fps[s - 1 + p]:
        s -= 1
    return s


def _vertical_period(fps: Sequence[tuple[int, ...]], period: int) -> int:
    for q in sorted(d for d in range(1, period + 1) if period % d == 0):
        if all(f[y] == f[(y + q) % period] for f in fps for y in range(period)):
            return q
    return period


def _report_from_columns(fps: list[tuple[int, ...]], m: int, b: int) -> Optional[PeriodReport]:
    hit = _first_state_repeat(fps, m)
    if hit is None:
        return None
    first, again = hit
    p = again - first
    # states agree from `first` on, so columns agree from first - m + 1 on
    s = _minimal_preperiod(fps, first - m + 1, p)
    q = _vertical_period(fps[: again + 1], 2 * b)
    cert = (
        f"columns {first - m + 1}..{first} (first {2 * b} rows) reappear as "
        f"columns {again - m + 1}..{again}; block width M={m}"
    )
    return PeriodReport(s, p, q, True, cert, (again + 1, 2 * b))


def detect_horizontal_period(table: SGTable, b: int) -> PeriodReport:
    """Eventual horizontal period of a nim-periodic 2-D table.

    The period is read off the first repeat of the state formed by ``M``
    consecutive column fingerprints.  The report is certified only for rules
    of the (0,-b)-plus-upward-transfer form, where that state determines every
    later column.
    """
    ok, _ = check_nim_periodicity(table, b)
    if not ok:
        raise PeriodicityError("nim-periodicity unverified on this table")
    if table.height < 2 * b:
        raise WindowTooSmall(f"height {table.height} < 2b = {2 * b}")
    m = _transfer_reach(table.rules)
    if table.width < 2 * m + 2:
        raise WindowTooSmall(f"width {table.width} < 2M+2 = {2 * m + 2}")
    fps = [tuple(int(v) for v in table.values[x, : 2 * b]) for x in range(table.width)]
    report = _report_from_columns(fps, m, b)
    if report is not None:
        if vertical_step(table.rules) != b:
            # the state argument needs the (0,-b)-plus-upward-transfer form
            return PeriodReport(
                report.preperiod, report.horizontal_period, report.vertical_period,
                False, "state repeat, rules outside the certified form", report.window_used,
            )
        return report

    raise PeriodNotFound(f"{table.rules.label}: no repeated column state in {len(fps)} columns")


def periodic_columns(rules: GameRules, n: int) -> list[tuple[int, ...]]:
    gen = iter_periodic_columns(rules)
    return [next(gen) for _ in range(n)]


def stream_period(
    rules: GameRules, max_columns: int = DEFAULT_MAX_COLUMNS
) -> tuple[PeriodReport, list[tuple[int, ...]]]:
    """Compute columns until the M-column state repeats; also return the columns."""
    b = vertical_step(rules)
    if b is None:
        raise PeriodicityError(f"{rules.label} is not of the form (0,-b) plus upward transfers")
    m = _transfer_reach(rules)
    seen: dict[tuple, int] = {}
    cols: list[tuple[int, ...]] = []
    for x, col in enumerate(iter_periodic_columns(rules)):
        cols.append(col)
        if x >= m - 1:
            state = tuple(cols[x - m + 1 : x + 1])
            if state in seen:
                report = _report_from_columns(cols, m, b)
                assert report is not None
                return report, cols
            seen[state] = x
        if x + 1 >= max_columns:
            break
    raise PeriodNotFound(f"{rules.label}: no repeated column state in {max_columns} columns")


def find_period(rules: GameRules, max_columns: int = DEFAULT_MAX_COLUMNS) -> PeriodReport:
    return stream_period(rules, max_columns)[0]


def certify_period_block(rules: GameRules, p: int, q: int) -> bool:
    """Check a candidate period (p, q) on a 2m x 2n block, assuming no preperiod."""
    from .game import compute_sg_table

    par = rules.params
    if par is None:
        raise PeriodicityError("block certification needs a Lengyel transfer game")
    m = max(p, par.x1, par.x2)
    n = max(q, par.b, par.y1, par.y2)
    vals = compute_sg_table(rules, (2 * m, 2 * n)).values
    return bool(
        np.array_equal(vals[: 2 * m - p], vals[p:])
        and np.array_equal(vals[:, : 2 * n - q], vals[:, q:])
    )


# -- structure -------------------------------------------------------------


def classify_2columns(
    table: SGTable, params: Optional[LengyelParams] = None
) -> tuple[set[int], bool]:
    """Columns holding a 2 or 3, and whether they all sit in potential 2-column classes."""
    par = _lengyel_params(table, params)
    cols = {int(x) for x in np.nonzero((table.values >= 2).any(axis=1))[0]}
    small, large = sorted((par.x1, par.x2))
    period = par.x1 + par.x2
    allowed = {r % period for r in range(large, large + small)}
    return cols, all(x % period in allowed for x in cols)


def check_row_parity(table: SGTable, b: int) -> bool:
    """Rows 0..b-1 mod 2b hold no 3; rows b..2b-1 mod 2b hold no 2."""
    low = (np.arange(table.height) % (2 * b)) < b
    vals = table.values
    return not ((vals[:, low] == 3).any() or (vals[:, ~low] == 2).any())


def bad_pair_offset(par: LengyelParams) -> tuple[int, int]:
    return (par.x1 - par.x2, par.y2 - par.y1)


def find_bad_pairs(
    table: SGTable, params: Optional[LengyelParams] = None
) -> tuple[list[tuple[Position, Position]], list[tuple[Position, tuple[int, int], int]]]:
    """All bad pairs of 2s in the window, plus maximal chains along the pair offset.

    A pair is ((x, y), (x', y')) with (x, y) = (x', y') + offset.  A chain is
    reported as (first cell, offset, number of cells).
    """
    par = _lengyel_params(table, params)
    dx, dy = bad_pair_offset(par)
    if (dx, dy) == (0, 0):
        return [], []
    two = sg_star(table) == 2
    w, h = table.width, table.height

    def inside(x: int, y: int) -> bool:
        return 0 <= x < w and 0 <= y < h

    cells = {(int(x), int(y)) for x, y in np.argwhere(two)}
    pairs = []
    for x, y in sorted(cells):
        if (x + dx, y + dy) in cells:
            pairs.append(((x + dx, y + dy), (x, y)))
    pairs.sort()
    chains = []
    linked = {b_ for _, b_ in pairs}
    for x, y in sorted(linked):
        if (x - dx, y - dy) in cells:
            continue
        n = 1
        while inside(x + n * dx, y + n * dy) and (x + n * dx, y + n * dy) in cells:
            n += 1
        chains.append(((x, y), (dx, dy), n))
    return pairs, chains


def check_diagonal_periodicity(
    table: SGTable, params: Optional[LengyelParams] = None
) -> Optional[int]:
    """Least x0 with SG*(x, y) == SG*(x+x1+x2, y-y1-y2) for all testable x >= x0.

    ``None`` when fewer than x1+x2 clean testable columns remain, i.e. the
    window shows no diagonal periodicity.
    """
    par = _lengyel_params(table, params)
    sx, sy = par.x1 + par.x2, par.y1 + par.y2
    if table.height <= sy:
        raise WindowTooSmall(f"height {table.height} must exceed y1+y2 = {sy}")
    limit = table.width - sx
    if limit <= 0:
        raise WindowTooSmall(f"width {table.width} must exceed x1+x2 = {sx}")
    star = sg_star(table)
    bad = star[:limit, sy:] != star[sx:, : table.height - sy]
    cols = np.nonzero(bad.any(axis=1))[0]
    x0 = 0 if cols.size == 0 else int(cols[-1]) + 1
    if x0 + sx > limit:
        return None
    return x0


def check_sg_star_monotone(
    table: SGTable, params: Optional[LengyelParams] = None
) -> tuple[bool, Optional[Position]]:
    """SG*(x+x1+x2, y-y1-y2) == 2 forces SG*(x, y) == 2; returns the first (x, y) breaking it."""
    par = _lengyel_params(table, params)
    sx, sy = par.x1 + par.x2, par.y1 + par.y2
    if table.width <= sx or table.height <= sy:
        return True, None
    star = sg_star(table)
    later = star[sx:, : table.height - sy] == 2
    here = star[: table.width - sx, sy:] == 2
    bad = np.argwhere(later & ~here)
    if bad.size == 0:
        return True, None
    x, y = min(tuple(int(i) for i in row) for row in bad)
    return False, (x, y + sy)


def structure_report(table: SGTable, params: Optional[LengyelParams] = None) -> StructureReport:
    par = params or table.rules.params
    b = vertical_step(table.rules)
    if b is None or table.height < b + 1:
        return StructureReport(nim_periodic=False)
    ok, where = check_nim_periodicity(table, b)
    rep = StructureReport(nim_periodic=ok, nim_counterexample=where)
    rep.two_columns = {int(x) for x in np.nonzero((table.values >= 2).any(axis=1))[0]}
    if par is None or table.values.max() > 3:
        return rep
    rep.two_columns, rep.two_block_rule_holds = classify_2columns(table, par)
    rep.row_parity_holds = check_row_parity(table, par.b)
    rep.bad_pairs, rep.chains = find_bad_pairs(table, par)
    if table.height > par.y1 + par.y2 and table.width > par.x1 + par.x2:
        rep.diagonally_periodic_after = check_diagonal_periodicity(table, par)
    return rep
