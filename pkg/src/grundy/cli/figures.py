"""Recompute the printed game tables and compare them with the golden copies in figures.txt."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Optional

from ..game import compute_sg_table
from .render import parse_grid, render_table
from .spec import parse_spec

FIGURE_IDS = (1, 2, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14)


class UnknownFigure(KeyError):
    pass


@dataclass(frozen=True)
class Golden:
    figure: int
    spec: str
    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows[0]), len(self.rows)


@dataclass(frozen=True)
class GridCheck:
    golden: Golden
    rendered: str
    # (x, y, computed, printed) of the first mismatch in row-major order
    first_diff: Optional[tuple[int, int, int, int]]

    @property
    def passed(self) -> bool:
        return self.first_diff is None


@dataclass(frozen=True)
class FigureCheck:
    figure: int
    grids: tuple[GridCheck, ...]

    @property
    def passed(self) -> bool:
        return all(g.passed for g in self.grids)

    def report(self) -> str:
        lines = []
        for g in self.grids:
            w, h = g.golden.shape
            status = "PASS" if g.passed else "FAIL"
            lines.append(f"figure {self.figure} {g.golden.spec} {w}x{h}: {status}")
            if g.first_diff is not None:
                x, y, got, want = g.first_diff
                lines.append(f"  first difference at (x={x}, y={y}): computed {got}, printed {want}")
            lines.append(g.rendered.rstrip("\n"))
        return "\n".join(lines) + "\n"


@lru_cache(maxsize=1)
def goldens() -> tuple[Golden, ...]:
    text = resources.files(__package__).joinpath("figures.txt").read_text()
    out: list[Golden] = []
    head: Optional[tuple[int, str]] = None
    body: list[str] = []

    def flush():
        if head is not None:
            out.append(Golden(head[0], head[1], tuple(map(tuple, parse_grid("\n".join(body))))))

    for line in text.splitlines():
        if line.startswith("#"):
            continue
        if line.startswith("@"):
            flush()
            _, fid, spec = line.split(maxsplit=2)
            head, body = (int(fid), spec), []
        elif line.strip():
            body.append(line)
    flush()
    return tuple(out)


def check_grid(golden: Golden) -> GridCheck:
    table = compute_sg_table(parse_spec(golden.spec), golden.shape)
    rows = table.rows()
    diff = None
    for y, (got_row, want_row) in enumerate(zip(rows, golden.rows)):
        for x, (got, want) in enumerate(zip(got_row, want_row)):
            if got != want:
                diff = (x, y, got, want)
                break
        if diff:
            break
    return GridCheck(golden, render_table(table, "ascii"), diff)


def reproduce_figure(figure: int) -> FigureCheck:
    if figure not in FIGURE_IDS:
        raise UnknownFigure(f"no table figure {figure}; known ids: {', '.join(map(str, FIGURE_IDS))}")
    grids = tuple(check_grid(g) for g in goldens() if g.figure == figure)
    return FigureCheck(figure, grids)
