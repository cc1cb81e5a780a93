from fvstw import Graph, vset
from fvstw.bags import (
    BagBundle,
    CHECK_COUNTS,
    bigbag,
    bigbag_runs,
    clear_caches,
    compute_xpath,
    derive_bags,
    set_checks,
    smallbag,
    smallbagcandidate,
    subbag,
)
from fvstw.states import State, STrace, Void


def test_subbag_examples():
    bag = vset([2, 5, 9])
    assert subbag(bag, 0) == bag
    assert subbag(bag, 2) == vset([2, 9])
    assert subbag(0, 0) == 0


def test_bigbag_with_no_rest_keeps_xs():
    g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    S = g.all
    assert bigbag(g, S, 2, vset([0]), "") == vset([0])


def test_bigbag_branch_bit_decides_membership():
    g = Graph(3, [(0, 2), (2, 1)])
    S = vset([0, 1])
    assert bigbag(g, S, 2, 0, "1") & vset([2])
    assert not bigbag(g, S, 2, 0, "0") & vset([2])
    bags = [bag for _, bag in bigbag_runs(g, S, 2, 0)]
    assert vset([2]) in bags and 0 in bags


def test_smallbagcandidate_with_no_rest():
    g = Graph(3, [(0, 1), (1, 2)])
    S = g.all
    out = smallbagcandidate(g, S, vset([2]), vset([1]), vset([0]), 0, 0, 0, 0)
    assert out == vset([1])


def test_separator_on_path_joins_the_candidate():
    g = Graph(3, [(0, 1), (1, 2)])
    S = vset([0, 2])
    assert smallbagcandidate(g, S, vset([2]), 0, vset([0]), 0, 0, 0, 0) == vset([1])


def test_pendant_vertex_with_all_neighbours_in_xs_stays_out():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    S = vset([0, 2])
    cand = smallbagcandidate(g, S, 0, vset([0, 2]), 0, 0, 0, 0, 0)
    assert cand == vset([0, 2])


def test_smallbag_fixpoint_output_shape():
    g = Graph(3, [(0, 1), (1, 2)])
    S = g.all
    result = smallbag(g, S, vset([2]), vset([1]), vset([0]), 0, vset([1]), 0, 0)
    assert result.X == vset([1]) and result.X_R == 0 and result.X_L1 == vset([1])


def test_limit_aborts_oversized_candidates():
    g = Graph(3, [(0, 1), (1, 2)])
    S = vset([0, 2])
    assert smallbagcandidate(g, S, vset([2]), 0, vset([0]), 0, 0, 0, 0, limit=0) is None


def test_derive_bags_for_void_state():
    g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    S = vset([0, 1])
    bundle = derive_bags(g, S, 2, State(Void(), STrace(0, S, 0), Void()))
    assert (bundle.X_max, bundle.X_p, bundle.X_min, bundle.X_c) == (S, 0, S, 0)
    assert bundle.union == g.all


def test_compute_xpath_examples():
    g = Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert compute_xpath(g, g.all, vset([0]), 0, vset([0]), 0) == 0
    S = vset([0, 1])
    star = Graph(3, [(2, 0)])
    assert compute_xpath(star, S, 0, vset([0]), 0, 0) == 0
    assert compute_xpath(star, S, 0, 0, vset([0]), 0) == vset([2])
    assert compute_xpath(g, vset([0, 3]), vset([1]), 0, vset([1]), vset([2])) == 0


def test_bundle_union():
    b = BagBundle(1, 2, 4, 0, 8)
    assert b.union == 15 and b.feasible


def test_checks_count_when_enabled():
    clear_caches()
    before = dict(CHECK_COUNTS)
    set_checks(True)
    try:
        g = Graph(3, [(0, 2), (2, 1)])
        bigbag_runs(g, vset([0, 1]), 2, 0)
    finally:
        set_checks(False)
        clear_caches()
    assert CHECK_COUNTS["bits"] > before["bits"]
    assert CHECK_COUNTS["partition"] > before["partition"]
