"""Shared graph corpora and brute-force references for the tests."""

import random
from itertools import combinations

import networkx as nx

from fvstw import Graph
from fvstw.generate import gnp
from fvstw.graph import connected_components, is_forest


def from_nx(h) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges()])


def atlas_connected(max_n: int = 6) -> list[Graph]:
    """One graph per isomorphism class of connected graphs on 1..max_n vertices."""
    return [from_nx(h) for h in nx.graph_atlas_g() if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h)]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g, g.all)) == 1


def random_connected(count: int, lo: int, hi: int, seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        g = gnp(rng.randint(lo, hi), rng.uniform(0.2, 0.8), rng.randrange(2**32))
        if is_connected(g):
            out.append(g)
    return out


def random_forest(n: int, rng: random.Random, root_prob: float = 0.15) -> list[tuple[int, int]]:
    return [(rng.randrange(v), v) for v in range(1, n) if rng.random() >= root_prob]


def brute_force_fvs_size(g: Graph) -> int:
    for r in range(g.n + 1):
        for chosen in combinations(range(g.n), r):
            mask = 0
            for v in chosen:
                mask |= 1 << v
            if is_forest(g, g.all & ~mask):
                return r
    raise AssertionError("unreachable: removing every vertex leaves a forest")


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def petersen() -> Graph:
    return from_nx(nx.petersen_graph())
