"""Text renderings of 2-D tables: rows are y ascending downward, columns x rightward."""

from __future__ import annotations

import json

from ..game import GameError, SGTable

FORMATS = ("ascii", "csv", "json")
SCHEMA = 1


def render_table(table: SGTable, fmt: str = "ascii") -> str:
    if len(table.shape) != 2:
        raise GameError(f"only 2-D tables can be rendered, got shape {table.shape}")
    rows = table.rows()
    if fmt == "ascii":
        return "\n".join(" ".join(str(v) for v in row) for row in rows) + "\n"
    if fmt == "csv":
        return "\n".join(",".join(str(v) for v in row) for row in rows) + "\n"
    if fmt == "json":
        doc = {
            "schema": SCHEMA,
            "spec": table.rules.label,
            "width": table.width,
            "height": table.height,
            "rows": rows,
        }
        return json.dumps(doc) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse_grid(text: str) -> list[list[int]]:
    """Inverse of the ascii and csv renderings."""
    out = []
    for line in text.strip().splitlines():
        out.append([int(c) for c in line.replace(",", " ").split()])
    return out
