"""Seeded random instance generators."""

from __future__ import annotations

import random

from .graph import Graph


def gnp(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def fvn_planted(n: int, fvn: int, seed: int, p: float | None = None) -> Graph:
    """A random tree on n - fvn vertices plus ``fvn`` vertices with random edges.

    The added vertices form a feedback vertex set, so the result has
    feedback vertex number at most ``fvn``. Each added vertex is joined to
    both ends of its own tree edge from a matching, which gives ``fvn``
    disjoint triangles and hence fvn exactly ``fvn`` whenever the tree has a
    matching that large. Further edges appear independently with
    probability ``p`` (default 3/n).
    """
    if not 0 <= fvn <= n:
        raise ValueError("need 0 <= fvn <= n")
    rng = random.Random(seed)
    base = n - fvn
    edges = set()
    tree = []
    for v in range(1, base):
        edge = (rng.randrange(v), v)
        edges.add(edge)
        tree.append(edge)
    rng.shuffle(tree)
    matched: set[int] = set()
    private = []
    for u, v in tree:
        if u not in matched and v not in matched:
            matched.update((u, v))
            private.append((u, v))
    prob = min(1.0, 3.0 / max(n, 1)) if p is None else p
    for i, s in enumerate(range(base, n)):
        nbrs = {u for u in range(n) if u != s and rng.random() < prob}
        if i < len(private):
            nbrs.update(private[i])
        elif not nbrs and n > 1:
            nbrs.add(rng.choice([u for u in range(n) if u != s]))
        for u in nbrs:
            edges.add((min(u, s), max(u, s)))
    return Graph(n, sorted(edges))
