from fvstw import Graph, oracle_decide, oracle_treewidth, validate, width
from fvstw.oracle import OracleCapError, decomposition_from_ordering

from corpus import complete, cycle, grid, petersen


def test_frozen_widths():
    cases = {
        "K5": (complete(5), 4),
        "C6": (cycle(6), 2),
        "grid3x3": (grid(3, 3), 3),
        "petersen": (petersen(), 4),
        "path4": (Graph(4, [(0, 1), (1, 2), (2, 3)]), 1),
        "edgeless3": (Graph(3), 0),
    }
    for name, (g, expected) in cases.items():
        w, td = oracle_treewidth(g)
        assert w == expected, name
        assert validate(td, g).ok and width(td) == w, name


def test_empty_graph_convention():
    assert oracle_treewidth(Graph(0))[0] == -1


def test_decide_examples():
    assert not oracle_decide(complete(4), 2)
    assert oracle_decide(complete(4), 3)
    assert oracle_decide(petersen(), 4)
    assert not oracle_decide(petersen(), 3)


def test_ordering_decomposition_is_valid():
    g = cycle(5)
    td = decomposition_from_ordering(g, [0, 1, 2, 3, 4])
    assert validate(td, g).ok and width(td) == 2


def test_cap_is_enforced(monkeypatch):
    monkeypatch.setenv("TW_ORACLE_CAP", "4")
    try:
        oracle_treewidth(cycle(5))
    except OracleCapError:
        return
    raise AssertionError("cap not enforced")
