import random
from itertools import combinations

from fvstw import Graph, vset
from fvstw.bags import decode_guess
from fvstw.generate import fvn_planted
from fvstw.graph import connected_components, members
from fvstw.states import (
    BigJoin,
    ExtendedForget,
    SmallIntroduce,
    SmallJoin,
    State,
    STrace,
    Void,
    _CONFLICT,
    encode_guess,
    is_valid_trace,
    op_child_traces,
    preceding_states,
    precedes,
    separation_need,
    side_colours,
)

A, B, X, V = 0, 1, 2, 3


def test_trace_validity_examples():
    g = Graph(2, [(A, B)])
    S = vset([A, B])
    assert not is_valid_trace(g, S, STrace(vset([A]), 0, vset([B])))
    assert is_valid_trace(g, S, STrace(vset([A]), vset([B]), 0))
    independent = Graph(3)
    S3 = vset([0, 1, 2])
    for labels in range(27):
        parts = [0, 0, 0]
        for v in range(3):
            parts[labels // 3**v % 3] |= 1 << v
        assert is_valid_trace(independent, S3, STrace(*parts))


def test_partition_is_checked():
    g = Graph(2, [(A, B)])
    try:
        is_valid_trace(g, vset([A, B]), STrace(vset([A]), vset([A]), vset([B])))
    except ValueError:
        return
    raise AssertionError("overlapping trace accepted")


def test_child_traces():
    intro = op_child_traces(SmallIntroduce(V, 1), STrace(vset([A]), vset([V]), vset([B])))
    assert intro == [STrace(vset([A]), 0, vset([B, V]))]
    forget = op_child_traces(ExtendedForget(V, 1, False, Void()), STrace(vset([V]), 0, 0))
    assert forget == [STrace(0, vset([V]), 0)]
    join = SmallJoin(vset([X]), vset([X]), 0, vset([A]), vset([B]), 1)
    children = op_child_traces(join, STrace(vset([A, B]), vset([X]), 0))
    assert children == [STrace(vset([A]), vset([X]), vset([B])), STrace(vset([B]), 0, vset([A, X]))]


def test_extended_forget_shape_rules():
    for bad in (lambda: ExtendedForget(0, 1, False, SmallIntroduce(1, 1)), lambda: ExtendedForget(0, 1, True, ExtendedForget(1, 1, True, Void()))):
        try:
            bad()
        except ValueError:
            continue
        raise AssertionError("malformed extended forget accepted")


def test_pinned_forget_has_single_predecessor():
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    S = vset([0, 2])
    inner = BigJoin(vset([0]), vset([0]), vset([0]), vset([1]), vset([3]), "0", 0, 0, 0)
    st = State(ExtendedForget(0, 1, True, inner), STrace(vset([0, 2]), 0, 0), Void())
    preds = preceding_states(g, S, 2, st)
    assert [p.bottom for p in preds] == [inner]


def test_introduce_predecessors_and_void_children():
    g = Graph(3, [(0, 1), (1, 2), (2, 0)])
    S = vset([0, 1])
    st = State(SmallIntroduce(1, 1), STrace(vset([0]), vset([1]), 0), Void())
    preds = preceding_states(g, S, 2, st)
    assert preds and all(p.trace == STrace(vset([0]), 0, vset([1])) for p in preds)
    leaf = State(ExtendedForget(0, 1, False, Void()), STrace(vset([0]), 0, vset([1])), Void())
    assert [p.bottom for p in preceding_states(g, S, 2, leaf)] == [Void()]


def test_guess_encoding():
    n = 5
    assert decode_guess(1, n) == (0, 0, 0)
    assert decode_guess(2, n) == (0, 0, 1)
    assert decode_guess((n + 1) ** 3, n) == (1 << 4, 1 << 4, 1 << 4)
    for d in range(1, (n + 1) ** 3 + 1, 7):
        triple = [None if m == 0 else m.bit_length() - 1 for m in decode_guess(d, n)]
        assert encode_guess(n, *triple) == d


def test_precedes_order():
    parent = STrace(vset([0, 1]), vset([2]), 0)
    assert precedes(STrace(vset([0]), vset([2]), vset([1])), parent)
    assert precedes(STrace(vset([0, 1]), 0, vset([2])), parent)
    assert not precedes(parent, parent)


def _brute_force_need(g, S, colours, inn, near):
    free = [v for v in range(g.n) if not (S | inn) >> v & 1]
    for r in range(len(free) + 1):
        for cut in combinations(free, r):
            alive = g.all & ~S & ~inn & ~vset(cut)
            ok = True
            for comp in connected_components(g, alive):
                c = 0
                for u in members(comp):
                    bit = 1 << u
                    c |= colours[u] | (8 if near[0] & bit else 0) | (16 if near[1] & bit else 0) | (32 if near[2] & bit else 0)
                ok = ok and not _CONFLICT[c]
            if ok:
                return r
    raise AssertionError("unreachable")


def test_separation_need_is_exact_on_forests():
    for seed in range(600):
        rng = random.Random(seed)
        n = rng.randint(3, 10)
        fvn = rng.randint(1, min(3, n))
        g = fvn_planted(n, fvn, seed)
        S = vset(range(n - fvn, n)) | vset(v for v in range(n) if rng.random() < 0.1)
        sides = [0, 0, 0]
        for v in members(S):
            sides[rng.randrange(3)] |= 1 << v
        colours = side_colours(g, S, *sides)
        inn = vset(v for v in range(n) if not S >> v & 1 and rng.random() < 0.2)
        dr, dl1, dl2 = (rng.choice([None] + list(range(n))) for _ in range(3))
        near = [0 if x is None else g.adj[x] for x in (dl1, dl2, dr)]
        expected = _brute_force_need(g, S, colours, inn, near)
        assert separation_need(g, S, colours, inn, dr, dl1, dl2) == expected
        assert separation_need(g, S, colours, inn, dr, dl1, dl2, cap=0) == min(expected, 1)
