"""Brute-force exact treewidth over vertex subsets (elimination orderings).

This module is the ground truth for testing and deliberately shares nothing
with the S-trace dynamic program beyond the graph type.
"""

from __future__ import annotations

import os

from .decomposition import TreeDecomposition
from .graph import Graph, members, size, component_of

DEFAULT_CAP = 20


class OracleCapError(ValueError):
    pass


def oracle_cap() -> int:
    return int(os.environ.get("TW_ORACLE_CAP", DEFAULT_CAP))


def _check_cap(g: Graph) -> None:
    cap = oracle_cap()
    if g.n > cap:
        raise OracleCapError(f"graph has {g.n} vertices, above the oracle cap of {cap}")


def _q_value(g: Graph, eliminated: int, v: int) -> int:
    """Number of vertices outside eliminated+v reachable from v through eliminated."""
    inside = eliminated | 1 << v
    comp = component_of(g, 1 << v, inside)
    reach = 0
    for u in members(comp):
        reach |= g.adj[u]
    return size(reach & ~inside)


def _ordering_at_most(g: Graph, k: int) -> list[int] | None:
    """Elimination ordering of width at most k, or None (subset DP, level by level)."""
    full = g.all
    parent: dict[int, tuple[int, int]] = {0: (-1, -1)}
    level = [0]
    for _ in range(g.n):
        nxt = []
        for s in level:
            for v in members(full & ~s):
                t = s | 1 << v
                if t in parent:
                    continue
                if _q_value(g, s, v) <= k:
                    parent[t] = (s, v)
                    nxt.append(t)
        level = nxt
    if full not in parent:
        return None
    order = []
    s = full
    while s:
        prev, v = parent[s]
        order.append(v)
        s = prev
    order.reverse()
    return order


def decomposition_from_ordering(g: Graph, order: list[int]) -> TreeDecomposition:
    """Fill-in construction: one bag per vertex holding it and its later neighbours."""
    if not order:
        return TreeDecomposition([], [], None)
    position = {v: i for i, v in enumerate(order)}
    adj = list(g.adj)
    bags = []
    for v in order:
        later = [u for u in members(adj[v]) if position[u] > position[v]]
        higher = 0
        for u in later:
            higher |= 1 << u
        for u in later:
            adj[u] |= higher & ~(1 << u)
        bags.append(higher | 1 << v)
    edges = []
    n = len(order)
    for i, v in enumerate(order):
        higher = bags[i] & ~(1 << v)
        if higher:
            j = min(position[u] for u in members(higher))
        elif i + 1 < n:
            j = i + 1
        else:
            continue
        edges.append((i, j))
    return TreeDecomposition(bags, edges, n - 1)


def oracle_decide(g: Graph, k: int) -> bool:
    _check_cap(g)
    if k < -1:
        return False
    if g.n == 0:
        return True
    if k < 0:
        return False
    return _ordering_at_most(g, k) is not None


def oracle_treewidth(g: Graph) -> tuple[int, TreeDecomposition]:
    _check_cap(g)
    if g.n == 0:
        return -1, TreeDecomposition([], [], None)
    k = 0 if g.m == 0 else 1
    while True:
        order = _ordering_at_most(g, k)
        if order is not None:
            return k, decomposition_from_ordering(g, order)
        k += 1
