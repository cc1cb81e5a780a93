"""Memoized evaluation of the PTW table, root aggregation and the width sweep.

States are memoized by what their value depends on: the trace, the two top
bags (X_max, X_p) and a descriptor of the bottom operation (child traces,
X_min, the child bags and, for a pinned extended forget, the pinned inner
descriptor). Distinct operations with equal descriptors are one entry.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field
from itertools import combinations

from .bags import BagBundle, bottom_bags, clear_caches, compute_xpath
from .decomposition import TreeDecomposition, attach, forest_decomposition, validate, width
from .fvs import min_fvs
from .graph import Graph, VertexSet, connected_components, degeneracy, greedy_clique, members, size
from .legality import LXR, legal1, legal2, legal2_single, partition_lxr
from .localtw import ltw
from .states import (
    BigJoin,
    ExtendedForget,
    SmallIntroduce,
    SmallJoin,
    STrace,
    Void,
    bottom_ops,
    is_valid_trace,
    op_child_traces,
)


class BudgetExceeded(RuntimeError):
    """The state budget or the time limit ran out before the answer was known."""


class InternalError(AssertionError):
    """A produced decomposition failed validation."""


@dataclass
class SolveConfig:
    state_budget: int | None = None
    time_limit: float | None = None


@dataclass
class SolveStats:
    states: int = 0
    options: int = 0
    ltw_calls: int = 0
    decide_calls: int = 0
    fvn: int = 0
    seconds: float = 0.0
    per_k: dict = field(default_factory=dict)

    def add(self, other: "SolveStats") -> None:
        self.states += other.states
        self.options += other.options
        self.ltw_calls += other.ltw_calls
        self.decide_calls += other.decide_calls


class Option:
    """A bottom operation reduced to what the recursion needs."""

    __slots__ = ("kind", "children", "parts", "x_min", "pinned", "op", "key")

    def __init__(self, kind: str, children: tuple, parts: tuple, x_min: VertexSet, pinned, op):
        self.kind = kind  # "void", "one" or "two"
        self.children = children
        self.parts = parts  # X_max of each predecessor
        self.x_min = x_min
        self.pinned = pinned  # Option of the pinned predecessor bottom, or None
        self.op = op  # a representative extended operation
        self.key = (kind, children, parts, x_min, None if pinned is None else pinned.key)

    def __repr__(self) -> str:
        return f"Option({self.kind}, x_min={self.x_min:#x}, op={self.op!r})"


_SMALL_INNER = (SmallIntroduce, SmallJoin, BigJoin)


class Entry:
    __slots__ = ("value", "bundle", "choice")

    def __init__(self):
        self.value = None
        self.bundle = None
        self.choice = ()


class PTWTable:
    """PTW values for one graph, feedback vertex set and target width."""

    def __init__(self, g: Graph, S: VertexSet, k: int, budget: int | None = None, deadline: float | None = None):
        self.g = g
        self.S = S
        self.k = k
        self.budget = budget
        self.deadline = deadline
        self.stats = SolveStats(fvn=size(S))
        self._options: dict = {}
        self._entries: dict = {}
        self._lxr: dict = {}
        self._ltw: dict = {}
        self._bundles: dict = {}
        self._preds: dict = {}

    # -- bottom descriptors

    def options(self, trace: STrace) -> list[Option]:
        key = (trace.L, trace.X)
        found = self._options.get(key)
        if found is not None:
            return found
        if not trace.L:
            result = [Option("void", (), (), trace.X, None, Void())]
            self._options[key] = result
            return result
        g, S, k = self.g, self.S, self.k
        seen: dict = {}
        for count, op in enumerate(bottom_ops(g, S, k, trace, include_pinned=False)):
            if count % 4096 == 0:
                self._check_clock()
            below = bottom_bags(g, S, k, trace, op)
            if below is None:
                continue
            x_min, parts = below
            children = tuple(op_child_traces(op, trace))
            kind = "two" if len(children) == 2 else "one"
            option = Option(kind, children, parts, x_min, None, op)
            seen.setdefault(option.key, option)
        for v in members(trace.L):
            child = STrace(trace.L & ~(1 << v), trace.X | 1 << v, trace.R)
            if not child.L or not is_valid_trace(g, S, child):
                continue
            for inner in self.options(child):
                if not isinstance(inner.op, _SMALL_INNER):
                    continue
                full = inner.x_min
                if size(full) != k + 1 or full & S != child.X:
                    continue
                op = ExtendedForget(v, 1, True, inner.op)
                option = Option("one", (child,), (full,), full & ~(1 << v), inner, op)
                seen.setdefault(option.key, option)
        result = list(seen.values())
        self.stats.options += len(result)
        self._options[key] = result
        return result

    def _check_clock(self) -> None:
        if self.deadline is not None and time.perf_counter() > self.deadline:
            raise BudgetExceeded("time limit exhausted")

    # -- per-state data

    def _bundle(self, trace: STrace, x_max: VertexSet, x_p: VertexSet, option: Option) -> BagBundle:
        x_c = 0
        for part in option.parts:
            x_c |= part
        x_min = trace.X if option.kind == "void" else option.x_min
        key = (x_max, x_p, x_min, x_c)
        bundle = self._bundles.get(key)
        if bundle is None:
            bundle = BagBundle(x_max, x_p, x_min, x_c, compute_xpath(self.g, self.S, x_max, x_p, x_min, x_c))
            self._bundles[key] = bundle
        return bundle

    def _local(self, bundle: BagBundle) -> bool:
        key = (bundle.X_max, bundle.X_p, bundle.X_min, bundle.X_path)
        found = self._ltw.get(key)
        if found is None:
            self.stats.ltw_calls += 1
            found = ltw(self.g, bundle, self.k)[0]
            self._ltw[key] = found
        return found

    def lxr(self, trace: STrace, bundle: BagBundle) -> LXR | None:
        key = (trace.L, bundle.X_max, bundle.X_p, bundle.X_min, bundle.X_c)
        if key not in self._lxr:
            self._lxr[key] = partition_lxr(self.g, trace.L, bundle)
        return self._lxr[key]

    # -- recursion

    def ptw(self, trace: STrace, x_max: VertexSet, x_p: VertexSet, option: Option) -> bool:
        key = (trace.L, trace.X, x_max, x_p, option.key)
        entry = self._entries.get(key)
        if entry is not None:
            if entry.value is None:
                raise InternalError("cyclic dependency between states")
            return entry.value
        entry = Entry()
        self._entries[key] = entry
        self.stats.states += 1
        if self.budget is not None and self.stats.states > self.budget:
            raise BudgetExceeded(f"state budget {self.budget} exhausted")
        self._check_clock()
        entry.bundle = bundle = self._bundle(trace, x_max, x_p, option)
        phi = self.lxr(trace, bundle)
        value = phi is not None and self._local(bundle)
        if value and option.kind == "one":
            value = self._one(phi, option, entry)
        elif value and option.kind == "two":
            value = self._two(phi, option, entry)
        entry.value = value
        return value

    def _predecessor(self, child: STrace, x_max: VertexSet, x_p: VertexSet, option: Option):
        key = (child.L, child.X, x_max, x_p, option.key)
        entry = self._entries.get(key)
        bundle = entry.bundle if entry is not None and entry.bundle is not None else self._bundle(child, x_max, x_p, option)
        return key, self.lxr(child, bundle)

    def _predecessors(self, child: STrace, x_max: VertexSet, x_p: VertexSet) -> list:
        """(key, psi, option) for every bottom option of ``child`` whose state has a consistent partition."""
        cache_key = (child.L, child.X, x_max, x_p)
        found = self._preds.get(cache_key)
        if found is None:
            found = []
            for pred in self.options(child):
                key, psi = self._predecessor(child, x_max, x_p, pred)
                if psi is not None:
                    found.append((key, psi, pred))
            self._preds[cache_key] = found
        return found

    def _one(self, phi: LXR, option: Option, entry: Entry) -> bool:
        child = option.children[0]
        x_max, x_p = option.parts[0], option.x_min
        if option.pinned is not None:
            key, psi = self._predecessor(child, x_max, x_p, option.pinned)
            candidates = [] if psi is None else [(key, psi, option.pinned)]
        else:
            candidates = self._predecessors(child, x_max, x_p)
        for key, psi, pred in candidates:
            if not legal1(self.g, phi, psi):
                continue
            if self.ptw(child, x_max, x_p, pred):
                entry.choice = (key,)
                return True
        return False

    def _two(self, phi: LXR, option: Option, entry: Entry) -> bool:
        sides = []
        for child, x_max in zip(option.children, option.parts):
            usable = [
                (key, psi, pred) for key, psi, pred in self._predecessors(child, x_max, option.x_min) if legal2_single(phi, psi)
            ]
            if not usable:
                return False
            sides.append(usable)
        (child1, child2), (x1, x2) = option.children, option.parts
        good_second: dict = {}
        for key1, psi1, pred1 in sides[0]:
            if not self.ptw(child1, x1, option.x_min, pred1):
                continue
            for key2, psi2, pred2 in sides[1]:
                if not legal2(self.g, phi, psi1, psi2):
                    continue
                if key2 not in good_second:
                    good_second[key2] = self.ptw(child2, x2, option.x_min, pred2)
                if good_second[key2]:
                    entry.choice = (key1, key2)
                    return True
        return False

    # -- roots and reconstruction

    def decide(self) -> tuple[bool, tuple | None]:
        S = self.S
        for count in range(size(S), -1, -1):
            for chosen in combinations(list(members(S)), count):
                XS = 0
                for v in chosen:
                    XS |= 1 << v
                if size(XS) > self.k + 1:
                    continue
                trace = STrace(S & ~XS, XS, 0)
                for option in self.options(trace):
                    if self.ptw(trace, XS, 0, option):
                        return True, (trace.L, trace.X, XS, 0, option.key)
        return False, None

    def build(self, key) -> TreeDecomposition:
        entry = self._entries[key]
        ok, td = ltw(self.g, entry.bundle, self.k)
        if not ok:
            raise InternalError("local decomposition vanished during reconstruction")
        for child_key in entry.choice:
            attach(td, td.anchor, self.build(child_key))
        return td


def decide(
    g: Graph,
    S: VertexSet,
    k: int,
    budget: int | None = None,
    stats: SolveStats | None = None,
    deadline: float | None = None,
):
    """Whether tw(g) <= k, with a validated decomposition on success.

    ``S`` must be a feedback vertex set of ``g``; disconnected graphs are
    split into components.
    """
    if g.n == 0:
        return k >= -1, TreeDecomposition([], [], None)
    pieces = []
    try:
        for comp in connected_components(g, g.all):
            sub, order = g.induced(comp)
            sub_s = 0
            for i, v in enumerate(order):
                if S >> v & 1:
                    sub_s |= 1 << i
            ok, td = _decide_connected(sub, sub_s, k, budget, stats, deadline)
            if not ok:
                return False, None
            pieces.append((td, order))
    finally:
        clear_caches()
    return True, _combine(g, pieces)


def trivial_decomposition(g: Graph, S: VertexSet) -> TreeDecomposition:
    """A width-1 decomposition of G - S with S added to every bag."""
    return forest_decomposition(g, g.all & ~S, S)


def _decide_connected(g: Graph, S: VertexSet, k: int, budget, stats, deadline=None) -> tuple[bool, TreeDecomposition | None]:
    trivial = trivial_decomposition(g, S)
    if width(trivial) <= k:
        return True, trivial
    if k < 0 or not S:
        # A connected forest: the trivial decomposition is already optimal.
        return False, None
    table = PTWTable(g, S, k, budget, deadline)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        ok, root_key = table.decide()
        td = table.build(root_key) if ok else None
    finally:
        sys.setrecursionlimit(limit)
        if stats is not None:
            stats.add(table.stats)
            stats.decide_calls += 1
            stats.per_k[k] = stats.per_k.get(k, 0) + table.stats.states
    if ok:
        report = validate(td, g)
        if not report.ok or width(td) > k:
            raise InternalError(f"reconstructed decomposition invalid: {report.messages()[:3]}")
    return ok, td


def _combine(g: Graph, pieces) -> TreeDecomposition:
    """Map component decompositions back to g's ids and hang them under one empty root."""
    mapped = [
        TreeDecomposition([sum(1 << order[v] for v in members(bag)) for bag in td.bags], td.edges, td.root)
        for td, order in pieces
    ]
    if len(mapped) == 1:
        return mapped[0]
    out = TreeDecomposition([0], [], 0)
    for td in mapped:
        attach(out, 0, td)
    return out


def lower_bound(g: Graph) -> int:
    if g.n == 0:
        return -1
    return max(size(greedy_clique(g)) - 1, degeneracy(g))


def treewidth(g: Graph, cfg: SolveConfig | None = None, stats: SolveStats | None = None) -> tuple[int, TreeDecomposition]:
    """Exact treewidth and a minimum-width decomposition."""
    cfg = cfg or SolveConfig()
    stats = stats if stats is not None else SolveStats()
    start = time.perf_counter()
    if g.n == 0:
        return -1, TreeDecomposition([], [], None)
    deadline = None if cfg.time_limit is None else start + cfg.time_limit
    pieces = []
    best = 0
    try:
        for comp in connected_components(g, g.all):
            sub, order = g.induced(comp)
            w, td = _treewidth_connected(sub, cfg, stats, deadline)
            best = max(best, w)
            pieces.append((td, order))
    finally:
        clear_caches()
    td = _combine(g, pieces)
    stats.seconds = time.perf_counter() - start
    report = validate(td, g)
    if not report.ok or width(td) != best:
        raise InternalError(f"final decomposition invalid: {report.messages()[:3]}")
    return best, td


def _treewidth_connected(g: Graph, cfg: SolveConfig, stats: SolveStats, deadline: float | None) -> tuple[int, TreeDecomposition]:
    fvs = min_fvs(g).set
    stats.fvn = max(stats.fvn, size(fvs))
    trivial = trivial_decomposition(g, fvs)
    top = width(trivial)
    for k in range(max(lower_bound(g), 0), top):
        ok, td = _decide_connected(g, fvs, k, cfg.state_budget, stats, deadline)
        if ok:
            return k, td
    return top, trivial
