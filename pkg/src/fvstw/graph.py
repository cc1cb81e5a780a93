"""Immutable simple undirected graphs over vertex ids 0..n-1.

Vertex sets are plain Python ints used as bitmasks: bit ``v`` is set when
vertex ``v`` is a member. The id order is the global tie-break order; every
algorithm in the package resolves ties toward the smallest id.
"""

from __future__ import annotations

from typing import Iterable, Iterator

VertexSet = int


def vset(vertices: Iterable[int] = ()) -> VertexSet:
    """Build a bitmask from an iterable of vertex ids."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> Iterator[int]:
    """Yield the vertex ids of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_list(mask: VertexSet) -> list[int]:
    return list(members(mask))


def size(mask: VertexSet) -> int:
    return mask.bit_count()


def lowest(mask: VertexSet) -> int:
    """Smallest vertex id in a nonempty mask."""
    return (mask & -mask).bit_length() - 1


class Graph:
    """Simple undirected graph with bitmask adjacency.

    Construct from an edge list; self-loops and parallel edges are rejected.
    """

    __slots__ = ("n", "adj", "m", "all", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if adj[u] >> v & 1:
                raise ValueError(f"parallel edge ({u},{v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            m += 1
        self.n = n
        self.adj = tuple(adj)
        self.m = m
        self.all = (1 << n) - 1
        self._hash = hash(self.adj)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> list[int]:
        return to_list(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int, within: VertexSet | None = None) -> int:
        if within is None:
            return size(self.adj[v])
        return size(self.adj[v] & within)

    def induced(self, within: VertexSet) -> tuple["Graph", list[int]]:
        """Return G[within] relabelled to 0..|within|-1 plus the id mapping back."""
        order = to_list(within)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph(len(order), edges), order

    def with_cliques(self, *cliques: VertexSet) -> "Graph":
        """Copy of the graph with every given vertex set turned into a clique."""
        adj = list(self.adj)
        for clique in cliques:
            for v in members(clique):
                adj[v] |= clique & ~(1 << v)
        return Graph._from_adj(adj)

    @classmethod
    def _from_adj(cls, adj: list[int]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(adj)
        g.m = sum(size(a) for a in adj) // 2
        g.all = (1 << g.n) - 1
        g._hash = hash(g.adj)
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def neighbors_of_set(g: Graph, s: VertexSet) -> VertexSet:
    """Open neighbourhood N(s)."""
    out = 0
    for v in members(s):
        out |= g.adj[v]
    return out & ~s


def closed_neighbors(g: Graph, s: VertexSet) -> VertexSet:
    return neighbors_of_set(g, s) | s


def component_of(g: Graph, start: VertexSet, within: VertexSet) -> VertexSet:
    """Vertices of ``within`` reachable from ``start`` inside G[within].

    ``start`` may hold several vertices; it is intersected with ``within``.
    """
    adj = g.adj
    seen = start & within
    frontier = seen
    while frontier:
        grow = 0
        for v in members(frontier):
            grow |= adj[v]
        frontier = grow & within & ~seen
        seen |= frontier
    return seen


def connected_components(g: Graph, within: VertexSet) -> list[VertexSet]:
    """Components of G[within], ordered by their smallest vertex."""
    comps = []
    rest = within
    while rest:
        comp = component_of(g, rest & -rest, within)
        comps.append(comp)
        rest &= ~comp
    return comps


def edge_count(g: Graph, within: VertexSet) -> int:
    return sum(size(g.adj[v] & within) for v in members(within)) // 2


def is_forest(g: Graph, within: VertexSet | None = None) -> bool:
    """True iff G[within] has no cycle (union-find scan over the edges)."""
    if within is None:
        within = g.all
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    for u in members(within):
        for v in members(g.adj[u] & within & ~((2 << u) - 1)):
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
    return True


def degeneracy(g: Graph) -> int:
    """Largest minimum degree over all subgraphs (min-degree peeling)."""
    alive = g.all
    best = 0
    while alive:
        v = min(members(alive), key=lambda u: (size(g.adj[u] & alive), u))
        best = max(best, size(g.adj[v] & alive))
        alive &= ~(1 << v)
    return best


def greedy_clique(g: Graph) -> VertexSet:
    """A maximal clique grown greedily from each vertex; the largest one wins."""
    best = 0
    for start in range(g.n):
        clique = 1 << start
        candidates = g.adj[start]
        while candidates:
            v = max(members(candidates), key=lambda u: (size(g.adj[u] & candidates), -u))
            clique |= 1 << v
            candidates &= g.adj[v]
        if size(clique) > size(best):
            best = clique
    return best
