"""Text form of a game: ``L(b;x1,y1;x2,y2)``, ``L2(b;x1,y1)``, ``Lstar(a,b,c)``, ``V[(..);(..)]``."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..game import (
    GameError,
    GameRules,
    LengyelParams,
    build_lengyel,
    build_multitransfer,
    build_two_move,
    is_lex_negative,
)


class SpecError(GameError):
    """Malformed game text; ``position`` indexes the original string."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class ParsedSpec:
    kind: str  # "L", "L2", "Lstar" or "V"
    args: tuple
    rules: GameRules


_INT = re.compile(r"-?\d+")


class _Reader:
    def __init__(self, text: str):
        self.text = text
        # squeeze whitespace but remember where each kept character came from
        self.chars = [(i, c) for i, c in enumerate(text) if not c.isspace()]
        self.src = "".join(c for _, c in self.chars)
        self.i = 0

    def where(self) -> int:
        if self.i < len(self.chars):
            return self.chars[self.i][0]
        return len(self.text)

    def fail(self, message: str):
        raise SpecError(message, self.text, self.where())

    def eat(self, literal: str) -> None:
        if not self.src.startswith(literal, self.i):
            self.fail(f"expected {literal!r}")
        self.i += len(literal)

    def peek(self, literal: str) -> bool:
        return self.src.startswith(literal, self.i)

    def integer(self) -> int:
        m = _INT.match(self.src, self.i)
        if m is None:
            self.fail("expected an integer")
        self.i = m.end()
        return int(m.group())

    def integers(self, sep: str, n: int | None = None) -> list[int]:
        vals = [self.integer()]
        while self.peek(sep) and (n is None or len(vals) < n):
            self.eat(sep)
            vals.append(self.integer())
        if n is not None and len(vals) != n:
            self.fail(f"expected {n} integers")
        return vals

    def end(self) -> None:
        if self.i != len(self.src):
            self.fail("unexpected trailing text")


def _checked(reader: _Reader, build, *args):
    try:
        return build(*args)
    except GameError as exc:
        raise SpecError(str(exc), reader.text, 0) from None


def parse_full(text: str) -> ParsedSpec:
    r = _Reader(text)
    if r.peek("Lstar"):
        r.eat("Lstar(")
        a, b, c = r.integers(",", 3)
        r.eat(")")
        r.end()
        return ParsedSpec("Lstar", (a, b, c), _checked(r, build_multitransfer, a, b, c))
    if r.peek("L2"):
        r.eat("L2(")
        b = r.integer()
        r.eat(";")
        x1, y1 = r.integers(",", 2)
        r.eat(")")
        r.end()
        return ParsedSpec("L2", (b, x1, y1), _checked(r, build_two_move, b, x1, y1))
    if r.peek("L"):
        r.eat("L(")
        b = r.integer()
        r.eat(";")
        x1, y1 = r.integers(",", 2)
        r.eat(";")
        x2, y2 = r.integers(",", 2)
        r.eat(")")
        r.end()
        p = _checked(r, LengyelParams, b, x1, y1, x2, y2)
        return ParsedSpec("L", p.as_tuple(), _checked(r, build_lengyel, p))
    if r.peek("V"):
        r.eat("V[")
        moves = []
        while True:
            start = r.i
            r.eat("(")
            vec = tuple(r.integers(","))
            r.eat(")")
            if not is_lex_negative(vec):
                r.i = start
                r.fail(f"move {vec} is not lexicographically negative")
            if moves and len(vec) != len(moves[0]):
                r.i = start
                r.fail("moves have different dimensions")
            moves.append(vec)
            if not r.peek(";"):
                break
            r.eat(";")
        r.eat("]")
        r.end()
        return ParsedSpec("V", tuple(moves), _checked(r, GameRules.from_moves, moves))
    r.fail("expected L(, L2(, Lstar( or V[")
    raise AssertionError("unreachable")


def parse_spec(text: str) -> GameRules:
    return parse_full(text).rules
