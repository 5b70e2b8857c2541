from __future__ import annotations


import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grundy.game import (
    GameRules,
    LengyelParams,
    build_lengyel,
    build_multitransfer,
    build_two_move,
    compute_sg_table,
    sg_star,
)
from grundy.periodicity import (
    PeriodicityError,
    PeriodNotFound,
    WindowTooSmall,
    bad_pair_offset,
    certify_period_block,
    check_diagonal_periodicity,
    check_nim_periodic_in,
    check_nim_periodicity,
    check_row_parity,
    check_sg_star_monotone,
    classify_2columns,
    detect_horizontal_period,
    find_bad_pairs,
    find_period,
    max_value_bound,
    nim_periodic_move_indices,
    structure_report,
)

from conftest import lengyel_params


def L(*args):
    return build_lengyel(LengyelParams(*args))


def table(*args, w=64, h=None):
    p = LengyelParams(*args)
    return compute_sg_table(build_lengyel(p), (w, h or 4 * p.b))


EXAMPLE_3D = GameRules.from_moves([(-3, 0, 5), (-2, 1, 0), (-1, 1, 1), (0, -3, 0), (0, 0, -4)])


# -- nim-periodicity -----------------------------------------------------------


def test_nim_periodicity_examples():
    assert check_nim_periodicity(table(2, 3, 0, 1, 1, w=16, h=4), 2) == (True, None)
    assert check_nim_periodicity(table(1, 1, 0, 1, 1, w=4, h=4), 1)[0]
    odd = compute_sg_table(GameRules.from_moves([(0, -2), (-1, 0), (-3, -2), (-2, 2)]), (10, 10))
    ok, where = check_nim_periodicity(odd, 2)
    assert not ok
    x, y = where
    assert odd[x, y + 2] != odd[x, y] ^ 1


def test_nim_periodicity_window_too_small():
    with pytest.raises(WindowTooSmall):
        check_nim_periodicity(table(3, 1, 0, 1, 1, w=4, h=3), 3)


def test_nim_periodic_move_indices():
    idx = nim_periodic_move_indices(EXAMPLE_3D)
    assert {EXAMPLE_3D.moves[i] for i in idx} == {(0, -3, 0), (0, 0, -4)}
    rules = L(3, 2, 1, 4, 5)
    assert {rules.moves[i] for i in nim_periodic_move_indices(rules)} == {(0, -3)}
    assert nim_periodic_move_indices(GameRules.from_moves([(-1, -1), (-2, 0)])) == set()


def test_max_value_bound():
    assert max_value_bound(EXAMPLE_3D) == 3
    assert max_value_bound(build_two_move(4, 3, 2)) == 1
    assert max_value_bound(GameRules.from_moves([(-1, -1), (-2, 0), (-1, -3)])) == 3


@settings(max_examples=40, deadline=None)
@given(lengyel_params(max_b=5, max_x=5))
def test_lengyel_tables_are_nim_periodic_and_bounded(p):
    t = compute_sg_table(build_lengyel(p), (48, 4 * p.b))
    assert check_nim_periodicity(t, p.b)[0]
    assert t.values.max() <= max_value_bound(t.rules)


@pytest.mark.parametrize("b", [2, 3, 5])
def test_multitransfer_is_nim_periodic(b):
    t = compute_sg_table(build_multitransfer(b, b, b), (30, 4 * b))
    assert check_nim_periodicity(t, b)[0]
    assert t.values.max() <= max_value_bound(t.rules)


def test_generalized_nim_periodicity_in_three_dimensions():
    t = compute_sg_table(EXAMPLE_3D, (10, 10, 10))
    assert check_nim_periodic_in(t, (0, -3, 0)) == (True, None)
    assert check_nim_periodic_in(t, (0, 0, -4)) == (True, None)
    assert t.values.max() <= max_value_bound(EXAMPLE_3D)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 9))
def test_two_move_values_alternate_along_the_transfer(b, x1, y1):
    t = compute_sg_table(build_two_move(b, x1, y1), (30, 4 * b + y1))
    v = t.values.astype(int)
    assert (v[x1:, : t.height - y1] == v[:-x1, y1:] ^ 1).all()


def test_two_move_subtraction_game_periodic_in_sum():
    u, v = (-1, -2), (-3, -1)
    t = compute_sg_table(GameRules.from_moves([u, v]), (30, 30))
    sx, sy = 4, 3
    assert (t.values[sx:, sy:] == t.values[:-sx, :-sy]).all()


# -- horizontal period -----------------------------------------------------------


@pytest.mark.parametrize(
    "args,expected",
    [
        ((2, 3, 0, 1, 1), (0, 16, 4)),
        ((7, 1, 0, 1, 6), (6, 2, 14)),
        ((1, 1, 0, 1, 1), (0, 2, 2)),
    ],
)
def test_detect_horizontal_period_examples(args, expected):
    rep = detect_horizontal_period(table(*args, w=128), args[0])
    assert rep.certified
    assert (rep.preperiod, rep.horizontal_period, rep.vertical_period) == expected


def test_sporadic_preperiod_detected():
    rep = detect_horizontal_period(table(2, 2, 0, 3, 1, w=64), 2)
    assert (rep.preperiod, rep.horizontal_period, rep.certified) == (10, 4, True)


def test_detect_requires_nim_periodicity_and_width():
    odd = compute_sg_table(GameRules.from_moves([(0, -2), (-1, 0), (-3, -2), (-2, 2)]), (10, 10))
    with pytest.raises(PeriodicityError):
        detect_horizontal_period(odd, 2)
    with pytest.raises(WindowTooSmall):
        detect_horizontal_period(table(2, 3, 0, 1, 1, w=6), 2)


def test_detect_reports_not_found_inside_short_window():
    with pytest.raises(PeriodNotFound):
        detect_horizontal_period(table(3, 5, 0, 7, 2, w=24), 3)
    rep = detect_horizontal_period(table(2, 3, 0, 1, 1, w=40), 2)
    assert rep.certified
    with pytest.raises(PeriodNotFound):
        find_period(L(3, 5, 0, 7, 2), max_columns=20)


def test_streamed_and_windowed_detection_agree():
    for args in [(3, 5, 0, 7, 2), (8, 1, 0, 1, 7), (2, 2, 0, 3, 3), (4, 3, 5, 2, 1)]:
        streamed = find_period(L(*args))
        windowed = detect_horizontal_period(table(*args, w=4 * streamed.window_used[0]), args[0])
        assert (windowed.preperiod, windowed.horizontal_period, windowed.vertical_period) == (
            streamed.preperiod, streamed.horizontal_period, streamed.vertical_period)


@settings(max_examples=40, deadline=None)
@given(lengyel_params(max_b=4, max_x=5))
def test_certified_period_holds_and_is_minimal(p):
    rep = find_period(build_lengyel(p))
    s, hp = rep.preperiod, rep.horizontal_period
    t = compute_sg_table(build_lengyel(p), (s + 3 * hp + 8, 2 * p.b))
    v = t.values
    assert (v[s : s + 2 * hp + 8] == v[s + hp : s + 3 * hp + 8]).all()
    for d in range(1, hp):
        assert not (v[s : s + 2 * hp] == v[s + d : s + d + 2 * hp]).all()
    if s > 0:
        assert not (v[s - 1] == v[s - 1 + hp]).all()
    assert rep.vertical_period == 2 * p.b


@settings(max_examples=20, deadline=None)
@given(lengyel_params(max_b=3, max_x=4))
def test_certified_reports_stable_under_window_enlargement(p):
    rep = find_period(build_lengyel(p))
    w = max(rep.window_used[0], 2 * max(p.x1, p.x2))
    small = detect_horizontal_period(compute_sg_table(build_lengyel(p), (w + 2, 2 * p.b)), p.b)
    big = detect_horizontal_period(compute_sg_table(build_lengyel(p), (2 * w + 4, 8 * p.b)), p.b)
    key = lambda r: (r.preperiod, r.horizontal_period, r.vertical_period, r.certified)
    assert key(small) == key(big) == key(rep)


def test_uncertified_form_is_flagged():
    # the (-2,-1) move is outside the column-kernel form
    rules = GameRules.from_moves([(0, -2), (-1, 1), (-2, -1)])
    t = compute_sg_table(rules, (80, 8))
    if check_nim_periodicity(t, 2)[0]:
        assert not detect_horizontal_period(t, 2).certified


def test_certify_period_block():
    assert certify_period_block(L(1, 1, 0, 1, 1), 2, 2)
    assert certify_period_block(L(2, 3, 0, 1, 1), 16, 4)
    assert not certify_period_block(L(2, 3, 0, 1, 1), 8, 4)


# -- structure -------------------------------------------------------------------


def test_two_columns():
    cols, ok = classify_2columns(table(2, 3, 0, 1, 1))
    assert ok and cols and all(x % 4 == 3 for x in cols)
    cols, ok = classify_2columns(table(3, 1, 0, 1, 1))
    assert ok and all(x % 2 == 1 for x in cols)


@settings(max_examples=60, deadline=None)
@given(lengyel_params(max_b=4, max_x=6))
def test_structure_lemmas_hold(p):
    t = compute_sg_table(build_lengyel(p), (60, 4 * p.b))
    cols, ok = classify_2columns(t)
    assert ok
    assert not cols & set(range(max(p.x1, p.x2)))
    assert check_row_parity(t, p.b)
    assert check_sg_star_monotone(t) == (True, None)


def test_row_parity_examples():
    assert check_row_parity(table(2, 3, 0, 1, 1, w=16, h=4), 2)
    assert check_row_parity(table(3, 1, 0, 1, 1, w=12, h=6), 3)
    fake = compute_sg_table(L(2, 3, 0, 1, 1), (4, 4))
    grid = fake.values.copy()
    grid[0, 0] = 3
    object.__setattr__(fake, "values", grid)
    assert not check_row_parity(fake, 2)


def test_bad_pairs_of_long_preperiod_game():
    t = table(7, 1, 0, 1, 6, w=20, h=28)
    pairs, chains = find_bad_pairs(t)
    assert pairs
    assert bad_pair_offset(t.rules.params) == (0, 6)
    star = sg_star(t)
    for (x, y), (xp, yp) in pairs:
        assert (x - xp, y - yp) == (0, 6)
        assert star[x, y] == star[xp, yp] == 2
        assert x <= 6
    for (x, y), (dx, dy), n in chains:
        assert n >= 2
        assert all(star[x + k * dx, y + k * dy] == 2 for k in range(n))


def test_no_bad_pairs_cases():
    assert find_bad_pairs(table(2, 3, 0, 1, 1))[0] == []
    for args in [(3, 5, 1, 2, 4), (2, 4, 0, 2, 3), (4, 6, 7, 3, 2)]:
        assert find_bad_pairs(table(*args))[0] == []


def test_diagonal_periodicity_examples():
    assert check_diagonal_periodicity(table(2, 3, 0, 1, 1)) == 0
    assert check_diagonal_periodicity(table(3, 1, 2, 1, 5)) is None
    x0 = check_diagonal_periodicity(table(7, 1, 0, 1, 6, w=64, h=56))
    assert x0 is not None and x0 <= 7


@settings(max_examples=40, deadline=None)
@given(lengyel_params(max_b=3, max_x=4))
def test_no_late_bad_pairs_gives_diagonal_periodicity(p):
    t = compute_sg_table(build_lengyel(p), (60, 8 * p.b + 2 * (p.y1 + p.y2)))
    pairs, _ = find_bad_pairs(t)
    last = max((max(a[0], b_[0]) for a, b_ in pairs), default=-1)
    x0 = last + 1
    if x0 + max(p.x1, p.x2) + 2 * (p.x1 + p.x2) >= t.width:
        return
    found = check_diagonal_periodicity(t)
    if found is None:
        # only the x1 = x2, |y1 - y2| = b shape lacks diagonal periodicity
        assert p.x1 == p.x2 and abs(p.y1 - p.y2) == p.b
    else:
        assert found <= x0 + max(p.x1, p.x2)


def test_structure_report_on_figure_2_game():
    rep = structure_report(table(2, 3, 0, 1, 1))
    assert rep.nim_periodic and rep.two_block_rule_holds and rep.row_parity_holds
    assert rep.bad_pairs == [] and rep.diagonally_periodic_after == 0
    doc = rep.as_dict()
    assert doc["two_columns"][:3] == [3, 7, 11]
