from __future__ import annotations

import sys
from functools import lru_cache

from hypothesis import strategies as st

from grundy.game import GameRules, LengyelParams, mex, options

sys.setrecursionlimit(20000)


def naive_sg(rules: GameRules):
    """Memoised recursion straight from the definition, used as an oracle."""

    @lru_cache(maxsize=None)
    def sg(pos):
        return mex(sg(q) for q in options(rules, pos))

    return sg


@st.composite
def lengyel_params(draw, max_b=4, max_x=4):
    b = draw(st.integers(1, max_b))
    return LengyelParams(
        b,
        draw(st.integers(1, max_x)),
        draw(st.integers(0, 2 * b - 1)),
        draw(st.integers(1, max_x)),
        draw(st.integers(0, 2 * b - 1)),
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
