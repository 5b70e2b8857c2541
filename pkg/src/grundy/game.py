"""Vector games and exact Sprague-Grundy tables.

A vector game on N^n is given by a finite set of integer move vectors; a move
adds one of them to the position, provided every coordinate stays
nonnegative.  Every move must be lexicographically negative so that play
terminates.

Tables are stored with axis order matching the coordinates, so for a 2-D game
``table.values[x, y]`` is the value of the position with ``x`` tokens in the
first pile and ``y`` in the second.  Rendering puts ``x`` on columns and ``y``
on rows, origin top left.
"""

from __future__ import annotations

import itertools
import math
import os
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

DEFAULT_MAX_CELLS = 50_000_000

Move = tuple[int, ...]
Position = tuple[int, ...]


class GameError(ValueError):
    """Malformed game description."""


class BudgetError(RuntimeError):
    """A computation would exceed the configured cell budget."""


class NimPeriodicityError(RuntimeError):
    """A column failed the vertical-period self check of the periodic kernel."""


def max_cells() -> int:
    raw = os.environ.get("GRUNDY_MAX_CELLS")
    if not raw:
        return DEFAULT_MAX_CELLS
    try:
        value = int(raw.replace("_", ""))
    except ValueError as exc:
        raise GameError(f"GRUNDY_MAX_CELLS must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise GameError("GRUNDY_MAX_CELLS must be positive")
    return value


def is_lex_negative(move: Sequence[int]) -> bool:
    for c in move:
        if c != 0:
            return c < 0
    return False


@dataclass(frozen=True)
class LengyelParams:
    """Parameters of the transfer game with moves (0,-b), (-x1,y1), (-x2,y2)."""

    b: int
    x1: int
    y1: int
    x2: int
    y2: int

    def __post_init__(self) -> None:
        for name in ("b", "x1", "y1", "x2", "y2"):
            if not isinstance(getattr(self, name), int):
                raise GameError(f"{name} must be an integer")
        if self.b < 1 or self.x1 < 1 or self.x2 < 1:
            raise GameError(f"b, x1, x2 must be positive: {self}")
        if self.y1 < 0 or self.y2 < 0:
            raise GameError(f"y1, y2 must be nonnegative: {self}")

    @property
    def label(self) -> str:
        return f"L({self.b};{self.x1},{self.y1};{self.x2},{self.y2})"

    def swapped(self) -> LengyelParams:
        return LengyelParams(self.b, self.x2, self.y2, self.x1, self.y1)

    def reduced_mod_2b(self) -> LengyelParams:
        m = 2 * self.b
        return LengyelParams(self.b, self.x1, self.y1 % m, self.x2, self.y2 % m)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.b, self.x1, self.y1, self.x2, self.y2)


@dataclass(frozen=True)
class GameRules:
    dimension: int
    moves: tuple[Move, ...]
    label: str
    params: Optional[LengyelParams] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise GameError("dimension must be positive")
        if not self.moves:
            raise GameError("a game needs at least one move")
        if len(set(self.moves)) != len(self.moves):
            raise GameError("moves must be pairwise distinct")
        for u in self.moves:
            if len(u) != self.dimension:
                raise GameError(f"move {u} does not have length {self.dimension}")
            if not is_lex_negative(u):
                raise GameError(f"move {u} is not lexicographically negative")

    @classmethod
    def from_moves(
        cls,
        moves: Iterable[Sequence[int]],
        label: Optional[str] = None,
        params: Optional[LengyelParams] = None,
    ) -> GameRules:
        """Build rules from move vectors, dropping repeats but keeping first-seen order."""
        unique: list[Move] = []
        for u in moves:
            t = tuple(int(c) for c in u)
            if t not in unique:
                unique.append(t)
        if not unique:
            raise GameError("a game needs at least one move")
        dim = len(unique[0])
        if label is None:
            label = format_vectors(unique)
        return cls(dim, tuple(unique), label, params)


def format_vectors(moves: Iterable[Sequence[int]]) -> str:
    return "V[" + ";".join("(" + ",".join(str(c) for c in u) + ")" for u in moves) + "]"


def build_lengyel(p: LengyelParams) -> GameRules:
    return GameRules.from_moves([(0, -p.b), (-p.x1, p.y1), (-p.x2, p.y2)], p.label, p)


def build_two_move(b: int, x1: int, y1: int) -> GameRules:
    if b < 1 or x1 < 1 or y1 < 0:
        raise GameError(f"invalid two-move game L2({b};{x1},{y1})")
    return GameRules.from_moves([(0, -b), (-x1, y1)], f"L2({b};{x1},{y1})")


def build_multitransfer(a: int, b: int, c: int) -> GameRules:
    if a < 1 or b < 1 or c < 1:
        raise GameError(f"invalid multitransfer game Lstar({a},{b},{c})")
    moves = [(-a, 0), (0, -b)] + [(-j, j) for j in range(1, c + 1)]
    return GameRules.from_moves(moves, f"Lstar({a},{b},{c})")


def options(rules: GameRules, pos: Sequence[int]) -> set[Position]:
    out = set()
    for u in rules.moves:
        q = tuple(p + c for p, c in zip(pos, u))
        if min(q) >= 0:
            out.add(q)
    return out


def mex(values: Iterable[int]) -> int:
    seen = set(values)
    n = 0
    while n in seen:
        n += 1
    return n


def value_dtype(rules: GameRules) -> np.dtype:
    return np.dtype(np.uint8) if len(rules.moves) < 255 else np.dtype(np.uint16)


@dataclass(frozen=True)
class SGTable:
    rules: GameRules
    shape: tuple[int, ...]
    values: np.ndarray = field(repr=False)
    method: str = "dense"

    def __getitem__(self, pos: Sequence[int]) -> int:
        return int(self.values[tuple(pos)])

    @property
    def width(self) -> int:
        return self.shape[0]

    @property
    def height(self) -> int:
        return self.shape[1]

    def rows(self) -> list[list[int]]:
        """Row-major view of a 2-D table (row index = y)."""
        if len(self.shape) != 2:
            raise ValueError("rows() needs a 2-D table")
        return self.values.T.astype(int).tolist()

    def column(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.values[x])


def vertical_step(rules: GameRules) -> Optional[int]:
    """Return b when the rules are {(0,-b)} plus transfers (-x, y) with x > 0, y >= 0.

    Those are exactly the games handled by the column kernel below.
    """
    if rules.dimension != 2:
        return None
    vertical = [u for u in rules.moves if u[0] == 0]
    if len(vertical) != 1:
        return None
    for u in rules.moves:
        if u[0] < 0 and u[1] < 0:
            return None
    return -vertical[0][1]


def iter_periodic_columns(rules: GameRules) -> Iterator[tuple[int, ...]]:
    """Yield columns 0, 1, 2, ... of a game accepted by :func:`vertical_step`.

    Each column is given by its first 2b entries.  The kernel computes 3b
    rows per column from the 2b-periodic earlier columns and checks that rows
    2b..3b-1 repeat rows 0..b-1; within a residue class mod b each entry is a
    function of the entry b rows below and of y mod 2b, so that check proves
    the column is 2b-periodic, which keeps the induction exact.
    """
    b = vertical_step(rules)
    if b is None:
        raise GameError(f"{rules.label} is not of the form (0,-b) plus upward transfers")
    period = 2 * b
    transfers = [(-u[0], u[1]) for u in rules.moves if u[0] < 0]
    cols: list[tuple[int, ...]] = []
    x = 0
    while True:
        srcs = [(cols[x - dx], dy) for dx, dy in transfers if dx <= x]
        col = [0] * (3 * b)
        for y in range(3 * b):
            seen = 0
            for c, dy in srcs:
                seen |= 1 << c[(y + dy) % period]
            if y >= b:
                seen |= 1 << col[y - b]
            col[y] = (~seen & (seen + 1)).bit_length() - 1
        if col[period:] != col[:b]:
            raise NimPeriodicityError(f"column {x} of {rules.label} is not {period}-periodic")
        column = tuple(col[:period])
        cols.append(column)
        yield column
        x += 1


def _mex_rows(opts: list[np.ndarray], n: int, kmax: int) -> np.ndarray:
    # opts hold -1 where the option does not exist; mex never exceeds kmax
    out = np.full(n, -1, dtype=np.int64)
    for v in range(kmax + 1):
        present = np.zeros(n, dtype=bool)
        for o in opts:
            present |= o == v
        fresh = (out < 0) & ~present
        out[fresh] = v
        if (out >= 0).all():
            break
    return out


def _dense_2d(rules: GameRules, width: int, height: int, cap: int) -> np.ndarray:
    need = [height] * width
    for x in range(width - 1, -1, -1):
        for ux, uy in rules.moves:
            if ux < 0 and x + ux >= 0:
                need[x + ux] = max(need[x + ux], need[x] + uy)
    total = sum(need)
    if total > cap:
        raise BudgetError(f"{rules.label}: {total} cells needed for exact padding, cap is {cap}")
    full_h = max(need)
    vals = np.full((width, full_h), -1, dtype=np.int64)
    same_col = [-uy for ux, uy in rules.moves if ux == 0]
    kmax = len(rules.moves)
    for x in range(width):
        h = need[x]
        step = min(same_col) if same_col else h
        for r0 in range(0, h, step):
            r1 = min(h, r0 + step)
            ys = np.arange(r0, r1)
            opts = []
            for ux, uy in rules.moves:
                xs = x + ux
                if xs < 0:
                    continue
                ty = ys + uy
                ok = ty >= 0
                o = np.full(r1 - r0, -1, dtype=np.int64)
                o[ok] = vals[xs, ty[ok]]
                opts.append(o)
            vals[x, r0:r1] = _mex_rows(opts, r1 - r0, kmax)
    return vals[:, :height]


def _closure_table(rules: GameRules, shape: tuple[int, ...], cap: int) -> np.ndarray:
    box = list(itertools.product(*(range(n) for n in shape)))
    needed = set(box)
    stack = list(box)
    while stack:
        p = stack.pop()
        for u in rules.moves:
            q = tuple(a + c for a, c in zip(p, u))
            if min(q) >= 0 and q not in needed:
                needed.add(q)
                stack.append(q)
                if len(needed) > cap:
                    raise BudgetError(f"{rules.label}: more than {cap} positions needed")
    sg: dict[Position, int] = {}
    for p in sorted(needed):
        seen = set()
        for u in rules.moves:
            q = tuple(a + c for a, c in zip(p, u))
            if min(q) >= 0:
                seen.add(sg[q])
        sg[p] = mex(seen)
    vals = np.empty(shape, dtype=np.int64)
    for p in box:
        vals[p] = sg[p]
    return vals


def compute_sg_table(
    rules: GameRules,
    shape: Sequence[int],
    method: str = "auto",
    cap: Optional[int] = None,
) -> SGTable:
    """Exact Sprague-Grundy values on the box ``[0, shape[0]) x ...``.

    ``method`` is one of ``auto``, ``periodic`` (column kernel, 2-D games of
    the (0,-b)-plus-upward-transfer form only), ``dense`` (2-D, padded with
    the extra rows that transfer moves reach) or ``closure`` (any dimension,
    evaluates every reachable position in lexicographic order).
    """
    shape = tuple(int(n) for n in shape)
    if len(shape) != rules.dimension:
        raise GameError(f"shape {shape} does not match dimension {rules.dimension}")
    if min(shape) < 1:
        raise GameError("every extent must be at least 1")
    cap = max_cells() if cap is None else cap
    if method == "auto":
        if vertical_step(rules) is not None:
            method = "periodic"
        elif rules.dimension == 2:
            method = "dense"
        else:
            method = "closure"

    if method == "periodic":
        b = vertical_step(rules)
        if b is None:
            raise GameError(f"periodic kernel does not apply to {rules.label}")
        width, height = shape
        if width * 3 * b > cap or math.prod(shape) > cap:
            raise BudgetError(f"{rules.label}: table of {math.prod(shape)} cells exceeds cap {cap}")
        cols = np.array(list(itertools.islice(iter_periodic_columns(rules), width)))
        vals = cols[:, np.arange(height) % (2 * b)]
    elif method == "dense":
        if rules.dimension != 2:
            raise GameError("dense method is 2-D only")
        vals = _dense_2d(rules, shape[0], shape[1], cap)
    elif method == "closure":
        if math.prod(shape) > cap:
            raise BudgetError(f"{rules.label}: box of {math.prod(shape)} cells exceeds cap {cap}")
        vals = _closure_table(rules, shape, cap)
    else:
        raise ValueError(f"unknown method {method!r}")

    out = np.ascontiguousarray(vals, dtype=value_dtype(rules))
    out.setflags(write=False)
    return SGTable(rules, shape, out, method)


def sg_star(grid) -> np.ndarray:
    """Collapse 3 to 2; values above 3 are rejected."""
    arr = np.asarray(grid.values if isinstance(grid, SGTable) else grid, dtype=np.int64)
    if arr.size and arr.max() > 3:
        raise ValueError(f"SG* needs values <= 3, found {int(arr.max())}")
    return np.where(arr == 3, 2, arr)
