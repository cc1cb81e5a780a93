"""S-traces, extended S-operations, states and predecessor generation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple, Union

from .graph import Graph, VertexSet, component_of, members, lowest, size


class STrace(NamedTuple):
    """Ordered tripartition (L, X, R) of the feedback vertex set, as bitmasks."""

    L: VertexSet
    X: VertexSet
    R: VertexSet


@dataclass(frozen=True)
class Void:
    pass


@dataclass(frozen=True)
class SmallIntroduce:
    v: int
    d: int


@dataclass(frozen=True)
class SmallJoin:
    X: VertexSet
    X1: VertexSet
    X2: VertexSet
    L1: VertexSet
    L2: VertexSet
    d: int


@dataclass(frozen=True)
class BigJoin:
    X: VertexSet
    X1: VertexSet
    X2: VertexSet
    L1: VertexSet
    L2: VertexSet
    s: str
    d0: int
    d1: int
    d2: int


@dataclass(frozen=True)
class ExtendedForget:
    v: int
    d: int
    f: bool
    inner: "ExtOp"

    def __post_init__(self):
        if isinstance(self.inner, ExtendedForget):
            raise ValueError("an extended forget cannot wrap another extended forget")
        if not self.f and not isinstance(self.inner, Void):
            raise ValueError("extended forget with f=false must wrap void")


ExtOp = Union[Void, SmallIntroduce, SmallJoin, BigJoin, ExtendedForget]
JOINS = (SmallJoin, BigJoin)


@dataclass(frozen=True)
class State:
    bottom: ExtOp
    trace: STrace
    top: ExtOp

    def key(self) -> tuple:
        """Canonical hashable encoding; R is implied by the partition."""
        return (self.bottom, self.trace.L, self.trace.X, self.top)


def check_partition(S: VertexSet, t: STrace) -> None:
    L, X, R = t
    if L & X or L & R or X & R or (L | X | R) != S:
        raise ValueError("trace is not a partition of S")


def is_valid_trace(g: Graph, S: VertexSet, t: STrace) -> bool:
    """No path from L to R inside G[S] - X."""
    check_partition(S, t)
    if not t.L or not t.R:
        return True
    return not component_of(g, t.L, S & ~t.X) & t.R


def child_traces(st: State) -> list[STrace]:
    return op_child_traces(st.bottom, st.trace)


def op_child_traces(op: ExtOp, trace: STrace) -> list[STrace]:
    """Traces of the S-children of an S-bottom node with the given trace and operation."""
    L, X, R = trace
    if isinstance(op, Void):
        raise ValueError("void has no S-children")
    if isinstance(op, SmallIntroduce):
        bit = 1 << op.v
        return [STrace(L, X & ~bit, R | bit)]
    if isinstance(op, ExtendedForget):
        bit = 1 << op.v
        return [STrace(L & ~bit, X | bit, R)]
    return [
        STrace(op.L1, op.X1, R | (X & ~op.X1) | op.L2),
        STrace(op.L2, op.X2, R | (X & ~op.X2) | op.L1),
    ]


def encode_guess(n: int, g1: int | None, g2: int | None, g3: int | None) -> int:
    """Index (1-based) of a triple in the mixed-radix order with the last entry fastest."""
    base = n + 1
    digits = [0 if x is None else x + 1 for x in (g1, g2, g3)]
    return 1 + (digits[0] * base + digits[1]) * base + digits[2]


def _restricted_guesses(
    g: Graph, S: VertexSet, limit: int, base: VertexSet, sides: tuple, first: list, second: list, third: list
) -> Iterator[int]:
    """Guess indices over the given candidate lists that can still yield a bag of at most ``limit`` vertices.

    Guesses are (D_R, D_L1, D_L2). A partial guess is dropped once the
    vertices it fixes plus the separation still needed exceed ``limit``;
    adding a vertex lowers the need by at most one, so no extension recovers.
    """
    n = g.n
    colours = side_colours(g, S, *sides)

    def fits(inn: VertexSet, dr, dl1, dl2) -> bool:
        spare = limit - size(inn)
        return spare >= 0 and separation_need(g, S, colours, inn, dr, dl1, dl2, spare) <= spare

    for a in first:
        with_a = base if a is None else base | 1 << a
        if not fits(with_a, a, None, None):
            continue
        for b in second:
            with_b = with_a if b is None else with_a | 1 << b
            if not fits(with_b, a, b, None):
                continue
            for c in third:
                if fits(with_b if c is None else with_b | 1 << c, a, b, c):
                    yield encode_guess(n, a, b, c)


def side_colours(g: Graph, S: VertexSet, L1S: VertexSet, L2S: VertexSet, RS: VertexSet) -> list[int]:
    """Per-vertex flags of the S-sides it is adjacent to: 1 = L1, 2 = L2, 4 = R."""
    out = []
    for a in g.adj:
        out.append((1 if a & L1S else 0) | (2 if a & L2S else 0) | (4 if a & RS else 0))
    return out


# Flag sets that may not share a component of G - S - In: two sides, or a
# side together with a neighbour of that side's guessed vertex (8, 16, 32).
_CONFLICT = [bin(c & 7).count("1") >= 2 or bool(c & 1 and c & 8) or bool(c & 2 and c & 16) or bool(c & 4 and c & 32) for c in range(64)]


def separation_need(
    g: Graph,
    S: VertexSet,
    colours: list[int],
    inn: VertexSet,
    dr: int | None,
    dl1: int | None,
    dl2: int | None,
    cap: int | None = None,
) -> int:
    """Fewest further non-S vertices whose removal leaves no conflicting component in G - S - inn.

    Leaf-up greedy on the forest: a vertex is cut when its still attached
    subtree holds a conflict, which is optimal for pairwise conflicts on trees.
    With ``cap`` set, stops early and returns cap + 1 once the need exceeds it.
    """
    adj = g.adj
    n1 = 0 if dl1 is None else adj[dl1]
    n2 = 0 if dl2 is None else adj[dl2]
    nr = 0 if dr is None else adj[dr]
    conflict = _CONFLICT
    alive = g.all & ~S & ~inn
    need = 0
    acc = [0] * g.n
    while alive:
        root = (alive & -alive).bit_length() - 1
        alive ^= 1 << root
        order = [root]
        parent = {root: -1}
        stack = [root]
        while stack:
            u = stack.pop()
            kids = adj[u] & alive
            if not kids:
                continue
            alive ^= kids
            while kids:
                low = kids & -kids
                kids ^= low
                v = low.bit_length() - 1
                order.append(v)
                parent[v] = u
                stack.append(v)
        for u in reversed(order):
            bit = 1 << u
            c = colours[u] | acc[u]
            if bit & n1:
                c |= 8
            if bit & n2:
                c |= 16
            if bit & nr:
                c |= 32
            if conflict[c]:
                need += 1
                if cap is not None and need > cap:
                    return need
            elif c:
                up = parent[u]
                if up >= 0:
                    acc[up] |= c
    return need


def _pool(g: Graph, candidates: VertexSet, side: VertexSet) -> list:
    """Guess candidates that have no neighbour in ``side``, plus bottom.

    A guessed vertex lies in the target bag but not in the bag towards
    ``side``; every vertex of ``side`` sits only beyond that bag, so an edge
    between the two could not be covered.
    """
    out: list = [None]
    out.extend(v for v in members(candidates) if not g.adj[v] & side)
    return out


def forced_vertices(g: Graph, S: VertexSet, L1S: VertexSet, L2S: VertexSet, RS: VertexSet) -> VertexSet:
    """Non-S vertices adjacent to two of the sides; every candidate bag holds them."""
    near = []
    for side in (L1S, L2S, RS):
        mask = 0
        for u in members(side):
            mask |= g.adj[u]
        near.append(mask)
    return ~S & g.all & ((near[0] & near[1]) | (near[0] & near[2]) | (near[1] & near[2]))


def bottom_ops(g: Graph, S: VertexSet, k: int, trace: STrace, include_pinned: bool = True) -> Iterator[ExtOp]:
    """Extended operations an S-bottom node with this trace may admit.

    Guess indices are enumerated only in shapes a correct guess can take:
    guessed S-vertices lie in the target X, the guesses, the target X and
    the vertices every candidate bag holds number at most k+1, and a guessed
    vertex has no neighbour on the side it is dropped towards. BigJoin bit strings come from the branching
    runs of bigbag, so each yields a distinct bag.
    """
    from .bags import bigbag_runs

    L, X, R = trace
    if not L:
        yield Void()
        return
    limit = k + 1
    non_s = g.all & ~S
    for v in members(X):
        child = STrace(L, X & ~(1 << v), R | 1 << v)
        if not is_valid_trace(g, S, child):
            continue
        base = X | forced_vertices(g, S, L, 0, R)
        for d in _restricted_guesses(g, S, limit, base, (L, 0, R), _pool(g, non_s | X, R), [v], [None]):
            yield SmallIntroduce(v, d)
    for v in members(L):
        child = STrace(L & ~(1 << v), X | 1 << v, R)
        if not is_valid_trace(g, S, child):
            continue
        second = [None] if not child.L else _pool(g, non_s | child.X, child.L)
        base = child.X | forced_vertices(g, S, child.L, 0, R)
        for d in _restricted_guesses(g, S, limit, base, (child.L, 0, R), [v], second, [None]):
            yield ExtendedForget(v, d, False, Void())
        if child.L and include_pinned:
            for inner in bottom_ops(g, S, k, child):
                if isinstance(inner, (SmallIntroduce, SmallJoin, BigJoin)):
                    yield ExtendedForget(v, 1, True, inner)
    first_vertex = lowest(L)
    rest_list = list(members(L & ~(1 << first_vertex)))
    x_options = [X] + [X & ~(1 << w) for w in members(X)]
    r_pool = _pool(g, non_s | X, R)
    for r in range(len(rest_list)):
        for extra in combinations(rest_list, r):
            L1 = 1 << first_vertex
            for w in extra:
                L1 |= 1 << w
            L2 = L & ~L1
            pool1 = _pool(g, non_s, L1)
            pool2 = _pool(g, non_s, L2)
            base = X | forced_vertices(g, S, L1, L2, R)
            for X1 in x_options:
                if X1 != X and g.adj[lowest(X & ~X1)] & L1:
                    continue
                for X2 in x_options:
                    if X2 != X and g.adj[lowest(X & ~X2)] & L2:
                        continue
                    op_children = [
                        STrace(L1, X1, R | (X & ~X1) | L2),
                        STrace(L2, X2, R | (X & ~X2) | L1),
                    ]
                    if not all(is_valid_trace(g, S, c) for c in op_children):
                        continue
                    d1_forced = [lowest(X & ~X1)] if X1 != X else pool1
                    d2_forced = [lowest(X & ~X2)] if X2 != X else pool2
                    for d in _restricted_guesses(g, S, limit, base, (L1, L2, R), r_pool, d1_forced, d2_forced):
                        yield SmallJoin(X, X1, X2, L1, L2, d)
                    for bits, bag in bigbag_runs(g, S, k, X):
                        if size(bag) != k + 1:
                            continue
                        for d1 in _subbag_indices(bag, X1, S):
                            for d2 in _subbag_indices(bag, X2, S):
                                yield BigJoin(X, X1, X2, L1, L2, bits.ljust(2 * size(S) + 1, "0"), 0, d1, d2)


def _subbag_indices(bag: VertexSet, child_x: VertexSet, S: VertexSet) -> list[int]:
    """Subbag indices whose result meets S exactly in ``child_x``."""
    ordered = list(members(bag))
    out = []
    for i in range(len(ordered) + 1):
        sub = bag if i == 0 else bag & ~(1 << ordered[i - 1])
        if sub & S == child_x:
            out.append(i)
    return out


def preceding_states(g: Graph, S: VertexSet, k: int, st: State):
    """Predecessor states of ``st``.

    Returns a list for one-child bottoms and a pair of lists for joins.
    Every yielded state has a valid trace and L strictly smaller than st's, or
    equal L and strictly smaller X.
    """
    if isinstance(st.bottom, Void):
        raise ValueError("void bottom has no predecessors")
    children = child_traces(st)
    groups = []
    for child in children:
        if isinstance(st.bottom, ExtendedForget) and st.bottom.f:
            ops = [st.bottom.inner]
        else:
            ops = list(bottom_ops(g, S, k, child))
        groups.append([State(op, child, st.bottom) for op in ops])
    if isinstance(st.bottom, JOINS):
        return groups[0], groups[1]
    return groups[0]


def precedes(child: STrace, parent: STrace) -> bool:
    """Well-founded order on traces used by the recursion."""
    if child.L != parent.L:
        return child.L & parent.L == child.L and child.L != parent.L
    return child.X & parent.X == child.X and child.X != parent.X
