import random

from fvstw import Graph, oracle_decide, oracle_treewidth, validate, vset, width
from fvstw.bags import BagBundle
from fvstw.graph import members
from fvstw.localtw import clique_forest_td, forest_claim_witness, local_graph, ltw

from corpus import complete, random_forest


def test_clique_only():
    w, td = clique_forest_td(complete(4), complete(4).all, 0)
    assert w == 3 and td.num_nodes == 1


def test_forest_only():
    path = Graph(3, [(0, 1), (1, 2)])
    w, td = clique_forest_td(path, 0, path.all)
    assert w == 1 and validate(td, path).ok


def test_clique_with_pendant():
    edges = [(u, v) for u in range(4) for v in range(u + 1, 4)] + [(4, 0), (4, 1)]
    g = Graph(5, edges)
    w, td = clique_forest_td(g, vset(range(4)), vset([4]))
    assert w == 3 == oracle_treewidth(g)[0]
    assert td.bags[td.root] == vset(range(4))


def test_clique_plus_forest_matches_oracle():
    rng = random.Random(2)
    for _ in range(60):
        c, f = rng.randint(0, 5), rng.randint(0, 8)
        edges = [(u, v) for u in range(c) for v in range(u + 1, c)]
        edges += [(c + u, c + v) for u, v in random_forest(f, rng)]
        edges += [(u, c + v) for u in range(c) for v in range(f) if rng.random() < 0.3]
        g = Graph(c + f, edges)
        w, td = clique_forest_td(g, vset(range(c)), vset(range(c, c + f)))
        assert validate(td, g).ok and width(td) == w
        if g.n:
            assert w == oracle_treewidth(g)[0]


def test_identical_bags_give_two_nodes():
    g = complete(3)
    b = BagBundle(g.all, g.all, g.all, 0, 0)
    ok, td = ltw(g, b, 2)
    assert ok and td.num_nodes == 2
    assert td.bags[td.anchor] == g.all


def test_clique_beyond_k_is_rejected():
    g = complete(4)
    b = BagBundle(g.all, g.all, g.all, 0, 0)
    assert ltw(g, b, 2) == (False, None)


def test_infeasible_bundle():
    assert ltw(complete(2), BagBundle(0, 0, 0, 0, 0, False), 5) == (False, None)


def test_merge_along_a_pendant_vertex():
    # X1 = {0,1}, X2 = {2,3}; vertex 4 links them.
    g = Graph(5, [(0, 1), (2, 3), (1, 4), (4, 2), (0, 4)])
    b = BagBundle(vset([0, 1]), vset([0, 1]), vset([2, 3]), 0, vset([4]))
    expected = oracle_treewidth(local_graph(g, b))[0]
    for k in range(5):
        ok, td = ltw(g, b, k)
        assert ok == (k >= expected)
        assert ok == oracle_decide(local_graph(g, b), k)
        if ok:
            assert validate(td, local_graph(g, b)).ok and width(td) <= k


def test_forest_claim_small_cases():
    path = Graph(3, [(0, 1), (1, 2)])
    assert forest_claim_witness(path, path.all, vset([1])) == ("component", vset([0]))
    assert forest_claim_witness(path, path.all, vset([0])) == ("vertex", vset([0]))
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 12)
        g = Graph(n, random_forest(n, rng))
        D = vset(v for v in range(n) if rng.random() < 0.5) or 1
        kind, what = forest_claim_witness(g, g.all, D)
        if kind == "vertex":
            v = next(members(what))
            assert D >> v & 1 and bin(g.adj[v]).count("1") <= 1
