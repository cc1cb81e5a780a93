from fvstw import min_fvs
from fvstw.generate import fvn_planted, gnp
from fvstw.graph import is_forest


def test_gnp_is_seeded():
    assert gnp(12, 0.3, 4) == gnp(12, 0.3, 4)
    assert gnp(5, 1.0, 0).m == 10 and gnp(5, 0.0, 0).m == 0


def test_planted_vertices_form_a_feedback_set():
    for seed in range(20):
        g = fvn_planted(40, 3, seed)
        planted = ((1 << 3) - 1) << 37
        assert is_forest(g, g.all & ~planted)
        assert min_fvs(g).size <= 3
