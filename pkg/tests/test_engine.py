from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import graph_and_root
from planefire.embedding import parse_plane_graph
from planefire.engine import (
    BudgetSchedule,
    GameError,
    OracleLimitExceeded,
    SearchLimits,
    new_game,
    rho_exact,
    run,
    sn_exact,
    sn_exhaustive,
    step,
)
from planefire.generators import cycle, grid, k2n, path, star
from planefire.strategy import NullDefense, PlannedDefense

TWO = BudgetSchedule.constant(2)
ONE = BudgetSchedule.constant(1)


def test_schedule_parse_and_str():
    s = BudgetSchedule.parse("3, 2*")
    assert (s.head, s.tail) == ((3,), 2)
    assert [s.budget(t) for t in (1, 2, 5)] == [3, 2, 2]
    assert str(s) == "3,2*"
    assert BudgetSchedule.parse(str(s)) == s
    for bad in ("", "2", "a*", "2*,3", "-1*"):
        with pytest.raises(GameError):
            BudgetSchedule.parse(bad)


def test_new_game():
    g = cycle(5)
    s = new_game(g, 0, TWO)
    assert (s.burned, s.protected, s.round) == ({0}, set(), 0)
    with pytest.raises(GameError):
        new_game(g, 99, TWO)
    single = new_game(parse_plane_graph("planar 1\nn 1\nv 0 :\n"), 0, TWO)
    assert single.terminal and single.saved == 0


def test_step_examples():
    g = cycle(5)
    s = step(new_game(g, 0, TWO), {1, 4})
    assert s.terminal and s.saved == 4
    s = step(new_game(g, 0, TWO), {1})
    assert s.burned == {0, 4} and s.round == 1
    with pytest.raises(GameError, match="fire"):
        step(new_game(g, 0, TWO), {0})
    s = step(new_game(g, 0, TWO), {1})
    with pytest.raises(GameError, match="protected"):
        step(s, {1})
    with pytest.raises(GameError, match="budget"):
        step(new_game(g, 0, TWO), {1, 2, 4})


def test_run_examples():
    g = path(5)
    _, saved = run(g, 2, PlannedDefense({1: [1, 3]}), TWO)
    assert saved == 4
    _, saved = run(star(4), 0, NullDefense(), ONE)
    assert saved == 1


def test_oracle_spot_values():
    assert all(sn_exact(cycle(5), v, TWO) == 4 for v in range(5))
    assert sn_exact(star(4), 0, ONE) == 1
    assert sn_exact(grid(3, 3), 4, TWO) == 5 == sn_exhaustive(grid(3, 3), 4, TWO)


def test_k23_values():
    # hub 0: protect a leaf, then the other hub before it ignites
    g = k2n(3)
    assert sn_exact(g, 0, ONE) == 2 == sn_exhaustive(g, 0, ONE)
    assert sn_exact(g, 2, ONE) == 2 == sn_exhaustive(g, 2, ONE)


def test_rho_values():
    assert rho_exact(path(2), 2) == Fraction(1, 2)
    assert rho_exact(star(3), 1) == Fraction(5, 8)
    rates = [rho_exact(k2n(n), 1) for n in range(2, 9)]
    assert rates == [Fraction(2, n + 2) for n in range(2, 9)]
    assert all(a > b for a, b in zip(rates, rates[1:]))


def test_oracle_caps():
    with pytest.raises(OracleLimitExceeded):
        sn_exact(grid(4, 4), 0, TWO, SearchLimits(max_n=14, max_nodes=5))
    with pytest.raises(OracleLimitExceeded):
        sn_exact(grid(4, 4), 0, TWO, SearchLimits(max_n=10))


@settings(max_examples=25)
@given(graph_and_root(), st.sampled_from(["1*", "2*", "3,1*", "0,2*"]))
def test_pruned_matches_exhaustive(gr, budgets):
    g, r = gr
    if g.n > 9:
        return
    sched = BudgetSchedule.parse(budgets)
    assert sn_exact(g, r, sched) == sn_exhaustive(g, r, sched)


@given(graph_and_root())
def test_low_degree_root_saves_all_but_one(gr):
    g, r = gr
    if g.degree(r) > 2 or g.n > 14:
        return
    assert sn_exact(g, r, TWO) == g.n - 1


@given(graph_and_root())
def test_game_invariants(gr):
    g, r = gr
    s = new_game(g, r, TWO)
    strat = NullDefense()
    rounds = 0
    while not s.terminal:
        nxt = step(s, strat(s))
        assert s.burned <= nxt.burned and s.protected <= nxt.protected
        assert not nxt.burned & nxt.protected
        s = nxt
        rounds += 1
    assert rounds <= g.n
    assert r in s.burned
