"""Tree decompositions: data model, validation, rooting, Normalize and nice form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .graph import Graph, VertexSet, members, size, lowest, to_list


class TreeDecomposition:
    """Bags on the nodes 0..len(bags)-1 of a tree, optionally rooted.

    ``bags[i]`` is a vertex bitmask; ``edges`` is a list of node pairs.
    """

    def __init__(self, bags: Iterable[VertexSet], edges: Iterable[tuple[int, int]] = (), root: int | None = None):
        self.anchor: int | None = None
        self.bags = list(bags)
        self.edges = [tuple(e) for e in edges]
        self.root = root

    @property
    def num_nodes(self) -> int:
        return len(self.bags)

    def adjacency(self) -> list[list[int]]:
        nbrs: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            nbrs[a].append(b)
            nbrs[b].append(a)
        for lst in nbrs:
            lst.sort()
        return nbrs

    def children(self) -> list[list[int]]:
        """Child lists with respect to the root (node 0 when unrooted)."""
        root = 0 if self.root is None else self.root
        nbrs = self.adjacency()
        kids: list[list[int]] = [[] for _ in self.bags]
        if not self.bags:
            return kids
        seen = {root}
        stack = [root]
        while stack:
            t = stack.pop()
            for u in nbrs[t]:
                if u not in seen:
                    seen.add(u)
                    kids[t].append(u)
                    stack.append(u)
        return kids

    def preorder(self) -> list[int]:
        if not self.bags:
            return []
        kids = self.children()
        order = []
        stack = [0 if self.root is None else self.root]
        while stack:
            t = stack.pop()
            order.append(t)
            stack.extend(reversed(kids[t]))
        return order

    def add_node(self, bag: VertexSet, parent: int | None = None) -> int:
        self.bags.append(bag)
        node = len(self.bags) - 1
        if parent is not None:
            self.edges.append((parent, node))
        return node

    def copy(self) -> "TreeDecomposition":
        return TreeDecomposition(self.bags, self.edges, self.root)

    def canonical(self) -> "TreeDecomposition":
        """Renumber nodes in preorder from the root."""
        order = self.preorder()
        index = {t: i for i, t in enumerate(order)}
        edges = sorted(tuple(sorted((index[a], index[b]))) for a, b in self.edges)
        return TreeDecomposition([self.bags[t] for t in order], edges, 0 if order else None)

    def __repr__(self) -> str:
        bags = [to_list(b) for b in self.bags]
        return f"TreeDecomposition(bags={bags}, edges={self.edges}, root={self.root})"


@dataclass
class ValidationReport:
    """All violations found; empty means the decomposition is valid."""

    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def messages(self, base: int = 0) -> list[str]:
        out = []
        for kind, *data in self.violations:
            if kind == "T1":
                out.append(f"T1 violation: vertex {data[0] + base} in no bag")
            elif kind == "T2":
                out.append(f"T2 violation: edge ({data[0] + base},{data[1] + base})")
            elif kind == "T3":
                out.append(f"T3 violation: vertex {data[0] + base} occurs in a disconnected set of bags")
            elif kind == "range":
                out.append(f"bag violation: node {data[0] + base} holds vertex {data[1] + base} outside the graph")
            else:
                out.append(f"tree violation: {data[0]}")
        return out


def validate(td: TreeDecomposition, g: Graph) -> ValidationReport:
    report = ValidationReport()
    num = td.num_nodes
    if num == 0:
        if g.n:
            report.violations.append(("tree", "no nodes"))
            report.violations.extend(("T1", v) for v in range(g.n))
        return report
    for a, b in td.edges:
        if not (0 <= a < num and 0 <= b < num) or a == b:
            report.violations.append(("tree", f"bad edge ({a},{b})"))
            return report
    if len(td.edges) != num - 1:
        report.violations.append(("tree", f"{len(td.edges)} edges for {num} nodes"))
    nbrs = td.adjacency()
    seen = {0}
    stack = [0]
    while stack:
        for u in nbrs[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != num:
        report.violations.append(("tree", "node tree is disconnected"))
    if td.root is not None and not 0 <= td.root < num:
        report.violations.append(("tree", f"root {td.root} is not a node"))
    for t, bag in enumerate(td.bags):
        for v in members(bag & ~g.all):
            report.violations.append(("range", t, v))
    covered = 0
    for bag in td.bags:
        covered |= bag
    for v in members(g.all & ~covered):
        report.violations.append(("T1", v))
    for u, v in g.edges():
        pair = (1 << u) | (1 << v)
        if not any(bag & pair == pair for bag in td.bags):
            report.violations.append(("T2", u, v))
    for v in members(covered & g.all):
        holders = {t for t, bag in enumerate(td.bags) if bag >> v & 1}
        start = next(iter(holders))
        reach = {start}
        stack = [start]
        while stack:
            for u in nbrs[stack.pop()]:
                if u in holders and u not in reach:
                    reach.add(u)
                    stack.append(u)
        if reach != holders:
            report.violations.append(("T3", v))
    return report


def width(td: TreeDecomposition) -> int:
    if not td.bags:
        return -1
    return max(size(b) for b in td.bags) - 1


def root_at(td: TreeDecomposition, node: int) -> TreeDecomposition:
    if not 0 <= node < td.num_nodes:
        raise ValueError(f"node {node} not in decomposition")
    return TreeDecomposition(td.bags, td.edges, node)


def _chain(parent_bag: VertexSet, child_bag: VertexSet) -> list[VertexSet]:
    """Intermediate bags strictly between a parent and a child bag.

    Goes through the intersection when neither bag contains the other; each
    step removes or adds one smallest-id vertex.
    """
    bags = []
    middle = parent_bag & child_bag
    current = parent_bag
    while current != middle:
        current &= ~(1 << lowest(current & ~middle))
        bags.append(current)
    while current != child_bag:
        current |= 1 << lowest(child_bag & ~current)
        bags.append(current)
    if bags and bags[-1] == child_bag:
        bags.pop()
    return bags


def normalize(td: TreeDecomposition) -> TreeDecomposition:
    """Subdivide edges so neighbouring bags are nested and differ by at most one vertex."""
    if td.root is None:
        raise ValueError("normalize needs a rooted decomposition")
    out = TreeDecomposition([], [], 0)
    kids = td.children()
    new_id = {td.root: out.add_node(td.bags[td.root])}
    stack = [td.root]
    while stack:
        t = stack.pop()
        for c in kids[t]:
            parent = new_id[t]
            for bag in _chain(td.bags[t], td.bags[c]):
                parent = out.add_node(bag, parent)
            new_id[c] = out.add_node(td.bags[c], parent)
            stack.append(c)
    return out


def to_nice(td: TreeDecomposition, g: Graph | None = None) -> TreeDecomposition:
    """Nice decomposition with empty root and leaf bags and the same width.

    Every internal node is an introduce, forget or binary join node.
    """
    if not td.bags:
        return TreeDecomposition([0], [], 0)
    rooted = td if td.root is not None else root_at(td, 0)
    rooted = normalize(rooted)
    kids = rooted.children()
    out = TreeDecomposition([], [], None)
    tops: dict[int, int] = {}
    for t in reversed(rooted.preorder()):
        bag = rooted.bags[t]
        heads = []
        for c in kids[t]:
            node = tops[c]
            current = rooted.bags[c]
            while current & ~bag:
                current &= ~(1 << lowest(current & ~bag))
                node = _above(out, node, current)
            while current != bag:
                current |= 1 << lowest(bag & ~current)
                node = _above(out, node, current)
            heads.append(node)
        if not heads:
            node = out.add_node(0)
            current = 0
            while current != bag:
                current |= 1 << lowest(bag & ~current)
                node = _above(out, node, current)
            heads.append(node)
        node = heads[0]
        for other in heads[1:]:
            join = out.add_node(bag)
            out.edges.append((join, node))
            out.edges.append((join, other))
            node = join
        tops[t] = node
    node = tops[rooted.root]
    current = rooted.bags[rooted.root]
    while current:
        current &= ~(1 << lowest(current))
        node = _above(out, node, current)
    out.root = node
    return out.canonical()


def _above(td: TreeDecomposition, node: int, bag: VertexSet) -> int:
    parent = td.add_node(bag)
    td.edges.append((parent, node))
    return parent


def nice_node_kind(td: TreeDecomposition, node: int, kids: list[list[int]]) -> str | None:
    """Classify a node of a nice decomposition; None when it fits no pattern."""
    bag = td.bags[node]
    ch = kids[node]
    if not ch:
        return "leaf" if bag == 0 else None
    if len(ch) == 2:
        return "join" if td.bags[ch[0]] == bag == td.bags[ch[1]] else None
    if len(ch) == 1:
        below = td.bags[ch[0]]
        if below & bag == below and size(bag) == size(below) + 1:
            return "introduce"
        if below & bag == bag and size(below) == size(bag) + 1:
            return "forget"
    return None


def tree_decomposition(g: Graph, tree: VertexSet, extra: VertexSet, start: int) -> TreeDecomposition:
    """Width-1 decomposition of the tree G[tree] plus ``extra`` in every bag.

    Rooted at the node whose bag is ``extra`` plus ``start``.
    """
    td = TreeDecomposition([extra | 1 << start], [], 0)
    node_of = {start: 0}
    remaining = tree & ~(1 << start)
    stack = [start]
    while stack:
        u = stack.pop()
        for w in members(g.adj[u] & remaining):
            remaining &= ~(1 << w)
            edge_node = td.add_node(extra | 1 << u | 1 << w, node_of[u])
            node_of[w] = td.add_node(extra | 1 << w, edge_node)
            stack.append(w)
    return td


def forest_decomposition(g: Graph, within: VertexSet, extra: VertexSet = 0) -> TreeDecomposition:
    """Width-1 decomposition of the forest G[within] with ``extra`` added to every bag.

    Trees hang under a shared root holding ``extra`` alone.
    """
    td = TreeDecomposition([extra], [], 0)
    remaining = within
    while remaining:
        start = lowest(remaining)
        tree = _reach(g, start, within)
        attach(td, 0, tree_decomposition(g, tree, extra, start))
        remaining &= ~tree
    return td


def _reach(g: Graph, start: int, within: VertexSet) -> VertexSet:
    seen = frontier = 1 << start
    while frontier:
        grow = 0
        for v in members(frontier):
            grow |= g.adj[v]
        frontier = grow & within & ~seen
        seen |= frontier
    return seen


def attach(base: TreeDecomposition, base_node: int, other: TreeDecomposition) -> dict[int, int]:
    """Copy ``other`` into ``base``, linking its root under ``base_node``.

    Returns the node id mapping from ``other`` into ``base``.
    """
    offset = base.num_nodes
    base.bags.extend(other.bags)
    base.edges.extend((a + offset, b + offset) for a, b in other.edges)
    if other.bags:
        other_root = 0 if other.root is None else other.root
        base.edges.append((base_node, other_root + offset))
    return {t: t + offset for t in range(other.num_nodes)}
