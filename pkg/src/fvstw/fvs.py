"""Exact minimum feedback vertex set by shortest-cycle branching."""

from __future__ import annotations

from dataclasses import dataclass
from collections import deque

from .graph import Graph, VertexSet, members, size, is_forest


@dataclass(frozen=True)
class FvsResult:
    set: VertexSet
    size: int


def is_fvs(g: Graph, s: VertexSet) -> bool:
    return is_forest(g, g.all & ~s)


def _prune(g: Graph, alive: VertexSet) -> VertexSet:
    """Drop vertices of degree at most one until none remain."""
    changed = True
    while changed:
        changed = False
        for v in members(alive):
            if (g.adj[v] & alive) & ((g.adj[v] & alive) - 1) == 0:
                alive &= ~(1 << v)
                changed = True
    return alive


def _shortest_cycle(g: Graph, alive: VertexSet) -> list[int] | None:
    """Vertices of a shortest cycle in G[alive], BFS from every vertex in id order."""
    best: list[int] | None = None
    for root in members(alive):
        parent = {root: -1}
        depth = {root: 0}
        queue = deque([root])
        found = None
        while queue and found is None:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in members(g.adj[u] & alive):
                if w == parent[u]:
                    continue
                if w in depth:
                    found = (u, w)
                    break
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
        if found is None:
            continue
        u, w = found
        left, right = [u], [w]
        while left[-1] != right[-1]:
            if depth[left[-1]] >= depth[right[-1]]:
                left.append(parent[left[-1]])
            else:
                right.append(parent[right[-1]])
        cycle = left + right[-2::-1]
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


def _search(g: Graph, alive: VertexSet, budget: int) -> VertexSet | None:
    """Smallest FVS of G[alive] of size at most ``budget``, or None."""
    alive = _prune(g, alive)
    if not alive:
        return 0
    if budget <= 0:
        return None
    cycle = _shortest_cycle(g, alive)
    if cycle is None:
        return 0
    best = None
    for v in sorted(cycle):
        sub = _search(g, alive & ~(1 << v), budget - 1)
        if sub is not None:
            candidate = sub | 1 << v
            if best is None or size(candidate) < size(best):
                best = candidate
                budget = size(candidate) - 1
    return best


def fvs_at_most(g: Graph, k: int) -> VertexSet | None:
    """A feedback vertex set of size at most k, or None if none exists."""
    return _search(g, g.all, k)


def min_fvs(g: Graph) -> FvsResult:
    k = 0
    while True:
        found = fvs_at_most(g, k)
        if found is not None:
            return FvsResult(found, size(found))
        k += 1
