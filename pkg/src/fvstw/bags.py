"""Candidate bag construction for states.

Implements the guess decoder, ``subbag``, the branching bag builder
``bigbag``, the greedy ``smallbagcandidate`` with its top-heavy wrapper
``smallbag``, and the assembly of the five bag sets of a state.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .graph import Graph, VertexSet, connected_components, component_of, members, size, lowest
from .states import (
    BigJoin,
    ExtendedForget,
    ExtOp,
    SmallIntroduce,
    SmallJoin,
    State,
    STrace,
    Void,
    forced_vertices,
    op_child_traces,
)

# Runtime checks of the algorithm-internal invariants. Enabled by the test
# suite; the counters let the acceptance suite confirm the checks actually ran.
CHECKS = {"enabled": os.environ.get("FVSTW_CHECKS", "") == "1"}
CHECK_COUNTS = {"partition": 0, "one_neighbor": 0, "bits": 0, "wrapper_fixpoint": 0}


def set_checks(enabled: bool) -> None:
    CHECKS["enabled"] = enabled


class InvariantError(AssertionError):
    pass


def _assert(cond: bool, what: str) -> None:
    if not cond:
        raise InvariantError(what)


class GuessTriple(NamedTuple):
    D_R: VertexSet
    D_L1: VertexSet
    D_L2: VertexSet


def decode_guess(d: int, n: int) -> GuessTriple:
    """The d-th triple of (V + bottom)^3, last entry varying fastest."""
    base = n + 1
    if not 1 <= d <= base**3:
        raise ValueError(f"guess index {d} outside 1..{base ** 3}")
    index = d - 1
    digits = (index // (base * base), index // base % base, index % base)
    return GuessTriple(*(0 if x == 0 else 1 << (x - 1) for x in digits))


def subbag(bag: VertexSet, i: int) -> VertexSet:
    """``bag`` itself for i = 0, else ``bag`` without its i-th smallest vertex."""
    if i < 0 or i > size(bag):
        raise ValueError(f"subbag index {i} exceeds bag size {size(bag)}")
    if i == 0:
        return bag
    ordered = list(members(bag))
    return bag & ~(1 << ordered[i - 1])


# ---------------------------------------------------------------- bigbag


def _check_partition(g: Graph, rest: int, inn: int, out: int) -> None:
    CHECK_COUNTS["partition"] += 1
    _assert(not (rest & inn or rest & out or inn & out) and (rest | inn | out) == g.all, "Partition3 broken")


def _check_one_neighbor(g: Graph, S: VertexSet, rest: int, out: int) -> None:
    CHECK_COUNTS["one_neighbor"] += 1
    for comp in connected_components(g, out & ~S):
        reach = 0
        for v in members(comp):
            reach |= g.adj[v]
        _assert(size(reach & rest) <= 1, "component of G[Out - S] with two Rest neighbours")


def _bigbag_advance(g: Graph, S: VertexSet, k: int, inn: int, out: int, rest: int):
    """Run bigbag until it needs a bit or stops.

    Returns ("done", In) or ("branch", v, In, Out, Rest).
    """
    adj = g.adj
    while rest and size(inn) < k + 1:
        if CHECKS["enabled"]:
            _check_partition(g, rest, inn, out)
            _check_one_neighbor(g, S, rest, out)
        s_comps = [c for c in connected_components(g, out) if c & S]
        leaf = None
        for v in members(rest):
            if size(adj[v] & rest) > 1:
                continue
            if leaf is None:
                leaf = v
            touched = 0
            for comp in s_comps:
                if adj[v] & comp:
                    touched += 1
                    if touched == 2:
                        return ("branch", v, inn, out, rest)
        _assert(leaf is not None, "bigbag stuck: G[Rest] is not a forest")
        rest &= ~(1 << leaf)
        out |= 1 << leaf
    return ("done", inn)


@lru_cache(maxsize=None)
def bigbag(g: Graph, S: VertexSet, k: int, XS: VertexSet, s: str) -> VertexSet:
    """Grow a full bag from X^S, reading branch decisions from ``s``."""
    inn, out, rest = XS, S & ~XS, g.all & ~S
    used = 0
    while True:
        result = _bigbag_advance(g, S, k, inn, out, rest)
        if result[0] == "done":
            return result[1]
        _, v, inn, out, rest = result
        bit = s[used] if used < len(s) else "0"
        used += 1
        if CHECKS["enabled"]:
            CHECK_COUNTS["bits"] += 1
            _assert(used <= 2 * size(S) + 1, "bigbag consumed more than 2|S|+1 bits")
        rest &= ~(1 << v)
        if bit == "1":
            inn |= 1 << v
        else:
            out |= 1 << v


@lru_cache(maxsize=None)
def bigbag_runs(g: Graph, S: VertexSet, k: int, XS: VertexSet) -> tuple[tuple[str, VertexSet], ...]:
    """All distinct outcomes of bigbag for X^S, with the bit prefix that reaches each."""
    results: dict[VertexSet, str] = {}
    stack = [("", XS, S & ~XS, g.all & ~S)]
    while stack:
        bits, inn, out, rest = stack.pop()
        result = _bigbag_advance(g, S, k, inn, out, rest)
        if result[0] == "done":
            results.setdefault(result[1], bits)
            continue
        _, v, inn, out, rest = result
        if CHECKS["enabled"]:
            CHECK_COUNTS["bits"] += 1
            _assert(len(bits) + 1 <= 2 * size(S) + 1, "bigbag consumed more than 2|S|+1 bits")
        rest &= ~(1 << v)
        stack.append((bits + "1", inn | 1 << v, out, rest))
        stack.append((bits + "0", inn, out | 1 << v, rest))
    return tuple(sorted(((bits, bag) for bag, bits in results.items()), key=lambda item: item[0]))


# ---------------------------------------------------------- smallbag


def _component_kind(nbrs: VertexSet, RS: VertexSet, L1S: VertexSet, L2S: VertexSet) -> int:
    """Bit flags of the S-sides a component touches: 1 = L1, 2 = L2, 4 = R."""
    return (1 if nbrs & L1S else 0) | (2 if nbrs & L2S else 0) | (4 if nbrs & RS else 0)


def smallbagcandidate(
    g: Graph,
    S: VertexSet,
    RS: VertexSet,
    XS: VertexSet,
    L1S: VertexSet,
    L2S: VertexSet,
    DR: VertexSet,
    DL1: VertexSet,
    DL2: VertexSet,
    limit: int | None = None,
) -> VertexSet | None:
    """Greedy candidate for the target bag.

    With ``limit`` set, gives up and returns None as soon as In holds more
    than ``limit`` vertices.

    The applicable step of each Rest vertex is cached in per-step buckets and
    refreshed only for vertices whose surroundings changed; picking the lowest
    vertex of the first nonempty bucket is the first applicable step with
    smallest-id tie-break.
    """
    adj = g.adj
    inn = XS | DR | DL1 | DL2
    out = S & ~inn
    rest = g.all & ~(inn | out)
    guess_of = (0, DL1, DL2, 0, DR)
    # Components of G[Out - S], kept incrementally: Out only grows.
    comp_of: dict[int, int] = {}
    comp_mask: dict[int, VertexSet] = {}
    comp_reach: dict[int, VertexSet] = {}
    step_of: dict[int, int] = {}
    buckets = [0] * 8
    if limit is not None and size(inn | forced_vertices(g, S, L1S, L2S, RS)) > limit:
        return None
    if limit is not None and size(inn) == limit and not CHECKS["enabled"]:
        return _full_candidate(g, S, RS, L1S, L2S, inn, guess_of)

    def evaluate(v: int) -> int:
        a = adj[v]
        comp = 1 << v
        r = a
        touch = a & out & ~S
        while touch:
            root = comp_of[(touch & -touch).bit_length() - 1]
            mask = comp_mask[root]
            touch &= ~mask
            comp |= mask
            r |= comp_reach[root]
        nbrs = r & ~comp
        kind = (1 if nbrs & L1S else 0) | (2 if nbrs & L2S else 0) | (4 if nbrs & RS else 0)
        degree = (a & rest).bit_count()
        if kind in (3, 5, 6, 7):
            return 1
        if kind and nbrs & guess_of[kind]:
            return 2
        if kind == 4 and degree <= 1:
            return 3
        if kind in (1, 2) and degree <= 1:
            return 4
        if degree == 1 and nbrs & inn != inn:
            return 5
        if degree <= 1:
            return 6
        return 7

    def refresh(mask: VertexSet) -> None:
        while mask:
            low = mask & -mask
            mask ^= low
            v = low.bit_length() - 1
            old = step_of.get(v)
            if old is not None:
                buckets[old] &= ~low
            step = evaluate(v)
            step_of[v] = step
            buckets[step] |= low

    refresh(rest)
    while rest:
        if limit is not None and size(inn) > limit:
            return None
        if CHECKS["enabled"]:
            _check_partition(g, rest, inn, out)
            _check_one_neighbor(g, S, rest, out)
        step = next((i for i in range(1, 7) if buckets[i]), None)
        _assert(step is not None, "smallbagcandidate stuck: G[Rest] is not a forest")
        low = buckets[step] & -buckets[step]
        v = low.bit_length() - 1
        buckets[step] ^= low
        del step_of[v]
        rest &= ~low
        if step <= 2:
            inn |= low
            if limit is not None and size(inn) > limit:
                return None
            refresh(rest)
            continue
        out |= low
        comp = low
        reach = adj[v]
        touch = adj[v] & out & ~S & ~low
        while touch:
            root = comp_of[(touch & -touch).bit_length() - 1]
            mask = comp_mask.pop(root)
            reach |= comp_reach.pop(root)
            touch &= ~mask
            comp |= mask
        for u in members(comp):
            comp_of[u] = v
        comp_mask[v] = comp
        comp_reach[v] = reach
        refresh((reach | adj[v]) & rest)
    if limit is not None and size(inn) > limit:
        return None
    if CHECKS["enabled"] and limit is not None and size(XS | DR | DL1 | DL2) == limit:
        start = XS | DR | DL1 | DL2
        _assert(_full_candidate(g, S, RS, L1S, L2S, start, guess_of) == inn, "full-bag shortcut disagrees with the greedy")
    return inn


def _full_candidate(g: Graph, S: VertexSet, RS: VertexSet, L1S: VertexSet, L2S: VertexSet, inn: VertexSet, guess_of) -> VertexSet | None:
    """Outcome of the greedy when In already has ``limit`` vertices.

    Any step that adds to In exceeds the limit, and one fires exactly when a
    component of G - S - In touches two sides, or touches side H and a
    guessed vertex of H: the last vertex of such a component to leave Rest
    sees the whole component.
    """
    adj = g.adj
    remaining = g.all & ~S & ~inn
    while remaining:
        comp = frontier = remaining & -remaining
        reach = 0
        while frontier:
            grow = 0
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                grow |= adj[low.bit_length() - 1]
            reach |= grow
            frontier = grow & remaining & ~comp
            comp |= frontier
        remaining &= ~comp
        kind = (1 if reach & L1S else 0) | (2 if reach & L2S else 0) | (4 if reach & RS else 0)
        if kind in (3, 5, 6, 7) or (kind and reach & guess_of[kind]):
            return None
    return inn


class SmallBag(NamedTuple):
    X: VertexSet
    X_R: VertexSet
    X_L1: VertexSet
    X_L2: VertexSet


def _wrapper_step(g: Graph, S: VertexSet, L1S: VertexSet, L2S: VertexSet, sets: list[VertexSet]) -> bool:
    """Apply the first applicable wrapper step in place; report whether one applied."""
    X, X_R = sets[0], sets[1]
    adj = g.adj
    outside = g.all & ~X_R
    for comp in connected_components(g, outside):
        if not comp & S and comp & X:
            for i in range(4):
                sets[i] &= ~comp
            return True
    target = L1S | L2S | (X & ~X_R & S)
    reach = component_of(g, target, outside)
    for v in members(X_R & ~S):
        if not adj[v] & outside & reach:
            for i in range(4):
                sets[i] &= ~(1 << v)
            return True
    for v in members(X_R & ~S):
        live = adj[v] & outside & reach
        if live and live & (live - 1) == 0 and not live & S:
            u = lowest(live)
            for i in range(4):
                sets[i] = (sets[i] & ~(1 << v)) | 1 << u
            return True
    return False


@lru_cache(maxsize=None)
def smallbag(
    g: Graph,
    S: VertexSet,
    RS: VertexSet,
    XS: VertexSet,
    L1S: VertexSet,
    L2S: VertexSet,
    DR: VertexSet,
    DL1: VertexSet,
    DL2: VertexSet,
    limit: int | None = None,
) -> SmallBag | None:
    """Candidate bag plus parent/child bags, made top-heavy.

    None when the candidate exceeds ``limit`` vertices.
    """
    X = smallbagcandidate(g, S, RS, XS, L1S, L2S, DR, DL1, DL2, limit)
    if X is None:
        return None
    sets = [X, X & ~DR, X & ~DL1, X & ~DL2]
    steps = 0
    while _wrapper_step(g, S, L1S, L2S, sets):
        steps += 1
        _assert(steps <= g.n * g.n + 1, "wrapper did not reach a fixpoint")
    if CHECKS["enabled"]:
        CHECK_COUNTS["wrapper_fixpoint"] += 1
        _assert(not _wrapper_step(g, S, L1S, L2S, list(sets)), "wrapper output is not a fixpoint")
    return SmallBag(*sets)


# ------------------------------------------------------------ assembly


@dataclass(frozen=True)
class BagBundle:
    X_max: VertexSet
    X_p: VertexSet
    X_min: VertexSet
    X_c: VertexSet
    X_path: VertexSet
    feasible: bool = True

    @property
    def union(self) -> VertexSet:
        return self.X_max | self.X_p | self.X_min | self.X_path


INFEASIBLE = BagBundle(0, 0, 0, 0, 0, False)


def _guess_ok(k: int, S: VertexSet, XS: VertexSet, guess: GuessTriple) -> bool:
    """Cheap necessary conditions for a guess to be the correct one."""
    chosen = guess.D_R | guess.D_L1 | guess.D_L2
    return not chosen & S & ~XS and size(XS | chosen) <= k + 1


def _small(
    g: Graph, S: VertexSet, k: int, target: STrace, L1S: VertexSet, L2S: VertexSet, d: int, small_children: int = 0
) -> SmallBag | None:
    """smallbag for a target trace, or None when the guess cannot be the correct one.

    A correct guess gives the actual bag of the target node, so that bag
    holds the guessed vertices, has at most k+1 vertices and meets S in the
    target X. For a small operation with ``small_children`` S-children, the
    parent bag and those child bags must also stay below k+1 vertices.
    """
    guess = decode_guess(d, g.n)
    if not _guess_ok(k, S, target.X, guess):
        return None
    result = smallbag(g, S, target.R, target.X, L1S, L2S, *guess, k + 1)
    if result is None or size(result.X) > k + 1 or result.X & S != target.X:
        return None
    if (guess.D_R | guess.D_L1 | guess.D_L2) & ~result.X:
        return None
    if small_children:
        neighbours = (result.X_R, result.X_L1, result.X_L2)[: small_children + 1]
        if max(size(b) for b in neighbours) > k:
            return None
    return result


def top_bags(g: Graph, S: VertexSet, k: int, trace: STrace, top: ExtOp) -> tuple[VertexSet, VertexSet] | None:
    """(X_max, X_p) of a state with this trace and top operation, or None if infeasible."""
    L, X, R = trace
    if isinstance(top, Void):
        return X, 0
    if isinstance(top, SmallIntroduce):
        bit = 1 << top.v
        target = STrace(L, X | bit, R & ~bit)
        result = _small(g, S, k, target, L, 0, top.d, small_children=1)
        if result is None:
            return None
        x_max, x_p = result.X_L1, result.X
    elif isinstance(top, (SmallJoin, BigJoin)):
        if L == top.L1 and X == top.X1:
            side, other = 1, top.L2
        elif L == top.L2 and X == top.X2:
            side, other = 2, top.L1
        else:
            return None
        target = STrace(L | other, top.X, S & ~(L | other | top.X))
        if isinstance(top, SmallJoin):
            result = _small(g, S, k, target, top.L1, top.L2, top.d, small_children=2)
            if result is None:
                return None
            x_p = result.X
            x_max = result.X_L1 if side == 1 else result.X_L2
        else:
            x_p = bigbag(g, S, k, top.X, top.s)
            index = top.d1 if side == 1 else top.d2
            if size(x_p) != k + 1 or index > size(x_p):
                return None
            x_max = subbag(x_p, index)
    elif isinstance(top, ExtendedForget):
        bit = 1 << top.v
        if not top.f:
            result = _small(g, S, k, trace, L, 0, top.d)
            if result is None:
                return None
            x_max, x_p = result.X, result.X_R
        else:
            below = bottom_bags(g, S, k, trace, top.inner)
            if below is None:
                return None
            x_max = below[0]
            if size(x_max) != k + 1:
                return None
            x_p = x_max & ~bit
    else:
        raise TypeError(f"unknown operation {top!r}")
    if size(x_max) > k + 1 or size(x_p) > k + 1 or x_max & S != X:
        return None
    return x_max, x_p


def bottom_bags(g: Graph, S: VertexSet, k: int, trace: STrace, bottom: ExtOp) -> tuple[VertexSet, tuple[VertexSet, ...]] | None:
    """(X_min, per-child X_max) read off the predecessor states, or None if infeasible."""
    if isinstance(bottom, Void):
        return trace.X, ()
    parts = []
    x_min = None
    for child in op_child_traces(bottom, trace):
        bags = top_bags(g, S, k, child, bottom)
        if bags is None:
            return None
        if x_min is not None and bags[1] != x_min:
            return None
        x_min = bags[1]
        parts.append(bags[0])
    return x_min, tuple(parts)


def compute_xpath(g: Graph, S: VertexSet, X_max: VertexSet, X_p: VertexSet, X_min: VertexSet, X_c: VertexSet) -> VertexSet:
    """Union of the S-free components of G - (X_max + X_p + X_min) that belong to the path."""
    blocked = X_max | X_p | X_min
    private = X_c & ~X_min
    out = 0
    for comp in connected_components(g, g.all & ~blocked):
        if comp & S:
            continue
        reach = comp
        for v in members(comp):
            reach |= g.adj[v]
        if reach & private:
            continue
        if reach & ~comp & ~X_p:
            out |= comp
    return out


def assemble(g: Graph, S: VertexSet, top_pair, bottom_pair) -> BagBundle:
    if top_pair is None or bottom_pair is None:
        return INFEASIBLE
    x_max, x_p = top_pair
    x_min, parts = bottom_pair
    x_c = 0
    for part in parts:
        x_c |= part
    return BagBundle(x_max, x_p, x_min, x_c, compute_xpath(g, S, x_max, x_p, x_min, x_c))


def derive_bags(g: Graph, S: VertexSet, k: int, st: State) -> BagBundle:
    """The five bag sets of a state; infeasible when any derived bag is unusable."""
    return assemble(
        g,
        S,
        top_bags(g, S, k, st.trace, st.top),
        bottom_bags(g, S, k, st.trace, st.bottom),
    )


def clear_caches() -> None:
    smallbag.cache_clear()
    bigbag_runs.cache_clear()
    bigbag.cache_clear()
