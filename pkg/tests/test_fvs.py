from fvstw import Graph, min_fvs, vset
from fvstw.fvs import fvs_at_most, is_fvs
from fvstw.generate import fvn_planted

from corpus import brute_force_fvs_size, complete, cycle, random_connected


def test_tree_needs_nothing():
    tree = Graph(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
    assert min_fvs(tree).set == 0 and min_fvs(tree).size == 0


def test_cycle_needs_one_vertex():
    result = min_fvs(cycle(5))
    assert result.size == 1 and is_fvs(cycle(5), result.set)


def test_k4_needs_two():
    assert min_fvs(complete(4)).size == 2
    assert fvs_at_most(complete(4), 1) is None


def test_is_fvs_examples():
    triangle = complete(3)
    assert is_fvs(triangle, vset([1]))
    assert not is_fvs(triangle, 0)
    two = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    assert is_fvs(two, vset([0, 3]))


def test_matches_brute_force_on_random_graphs():
    for g in random_connected(150, 2, 8, seed=3):
        result = min_fvs(g)
        assert is_fvs(g, result.set)
        assert result.size == brute_force_fvs_size(g)


def test_planted_generator_hits_its_parameter():
    for fvn in range(1, 5):
        for seed in range(3):
            assert min_fvs(fvn_planted(30, fvn, seed)).size == fvn
