import random

import pytest

from fvstw import Graph, SolveConfig, SolveStats, decide, min_fvs, treewidth, validate, vset, width
from fvstw.dp import BudgetExceeded, PTWTable, lower_bound, trivial_decomposition
from fvstw.graph import members

from corpus import complete, cycle, grid, petersen


def test_forest_shortcut():
    tree = Graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    stats = SolveStats()
    ok, td = decide(tree, 0, 1, stats=stats)
    assert ok and validate(td, tree).ok and stats.states == 0


def test_cycle_decisions():
    c5 = cycle(5)
    assert decide(c5, vset([0]), 1) == (False, None)
    ok, td = decide(c5, vset([0]), 2)
    assert ok and validate(td, c5).ok and width(td) <= 2


def test_k4_decisions():
    k4 = complete(4)
    S = min_fvs(k4).set
    assert not decide(k4, S, 2)[0]
    ok, td = decide(k4, S, 3)
    assert ok and width(td) == 3


def test_void_root_on_triangle():
    g = complete(3)
    table = PTWTable(g, vset([0, 1]), 2)
    ok, key = table.decide()
    assert ok
    assert validate(table.build(key), g).ok


def test_treewidth_frozen_values():
    assert treewidth(Graph(0))[0] == -1
    assert treewidth(Graph(1))[0] == 0
    assert treewidth(grid(3, 3))[0] == 3
    assert treewidth(petersen())[0] == 4
    assert treewidth(complete(6))[0] == 5


def test_cycle_with_pendant_trees_at_scale():
    rng = random.Random(9)
    edges = [(i, (i + 1) % 20) for i in range(20)]
    edges += [(rng.randrange(v), v) for v in range(20, 200)]
    g = Graph(200, edges)
    w, td = treewidth(g)
    assert w == 2 and validate(td, g).ok and width(td) == 2


def test_disconnected_graph():
    g = Graph(8, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3), (3, 5), (4, 6)])
    w, td = treewidth(g)
    assert w == 3 and validate(td, g).ok
    ok, td = decide(g, min_fvs(g).set, 3)
    assert ok and validate(td, g).ok


def test_runs_are_deterministic():
    g = petersen()
    S = min_fvs(g).set
    tables = []
    for _ in range(2):
        table = PTWTable(g, S, 3)
        table.decide()
        tables.append({key: entry.value for key, entry in table._entries.items()})
    assert tables[0] == tables[1]


def test_budget_and_time_limit_are_reported():
    with pytest.raises(BudgetExceeded):
        treewidth(petersen(), SolveConfig(state_budget=3))
    with pytest.raises(BudgetExceeded):
        treewidth(petersen(), SolveConfig(time_limit=0.0))


def test_trivial_decomposition_and_lower_bound():
    g = petersen()
    S = min_fvs(g).set
    td = trivial_decomposition(g, S)
    assert validate(td, g).ok and width(td) <= len(list(members(S))) + 1
    assert lower_bound(g) <= 4
    assert lower_bound(complete(5)) == 4


def test_stats_are_filled():
    stats = SolveStats()
    treewidth(petersen(), stats=stats)
    assert stats.fvn == 3 and stats.states > 0 and stats.seconds > 0 and stats.per_k
