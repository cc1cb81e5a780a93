"""Exact treewidth of the local graph of a state.

``clique_forest_td`` solves graphs made of a clique plus a forest; ``ltw``
merges the two clique bags X_max + X_p and X_min along a path of bags and
hangs the leftover forest pieces off it.
"""

from __future__ import annotations

from .bags import BagBundle
from .decomposition import TreeDecomposition, attach, tree_decomposition, width
from .graph import Graph, VertexSet, connected_components, is_forest, members, size, lowest


class LocalPreconditionError(AssertionError):
    """The local graph lacks the clique-plus-forest shape the merge relies on."""


def _neighbors(adj, mask: VertexSet, alive: VertexSet) -> VertexSet:
    out = 0
    for v in members(mask):
        out |= adj[v]
    return out & alive & ~mask


def clique_forest_td(g: Graph, V1: VertexSet, V2: VertexSet) -> tuple[int, TreeDecomposition]:
    """Minimum-width decomposition of G[V1 + V2] with G[V1] complete and G[V2] a forest.

    The root bag is V1.
    """
    if V1 & V2:
        raise ValueError("V1 and V2 must be disjoint")
    for v in members(V1):
        if g.adj[v] & V1 != V1 & ~(1 << v):
            raise ValueError("G[V1] is not complete")
    if not is_forest(g, V2):
        raise ValueError("G[V2] is not a forest")
    td = TreeDecomposition([V1], [], 0)
    for comp in connected_components(g, V2):
        attach_set = _neighbors(g.adj, comp, V1)
        pivot = _find_pivot(g, comp, attach_set)
        if pivot is None:
            node = td.add_node(attach_set, 0)
            attach(td, node, tree_decomposition(g, comp, attach_set, lowest(comp)))
            continue
        node = td.add_node(attach_set | 1 << pivot, 0)
        for part in connected_components(g, comp & ~(1 << pivot)):
            missing = attach_set & ~_neighbors(g.adj, part, V1)
            extra = attach_set & ~(1 << lowest(missing))
            attach(td, node, tree_decomposition(g, part | 1 << pivot, extra, pivot))
    return width(td), td


def forest_claim_witness(g: Graph, forest: VertexSet, D: VertexSet) -> tuple[str, VertexSet] | None:
    """Witness that the merge loop can always progress on a forest.

    For G[forest] a forest and nonempty D inside it, returns ("vertex", v)
    for a v in D with at most one neighbour in the forest, else
    ("component", C) for a component C of the forest minus D with exactly
    one neighbour in D. None would refute the claim.
    """
    for v in members(D):
        if size(g.adj[v] & forest) <= 1:
            return "vertex", 1 << v
    for comp in connected_components(g, forest & ~D):
        if size(_neighbors(g.adj, comp, forest) & D) == 1:
            return "component", comp
    return None


def _find_pivot(g: Graph, comp: VertexSet, attach_set: VertexSet) -> int | None:
    """First vertex whose removal leaves pieces that each miss some attachment vertex."""
    for v in members(comp):
        if all(attach_set & ~_neighbors(g.adj, part, attach_set) for part in connected_components(g, comp & ~(1 << v))):
            return v
    return None


def _local_graph(g: Graph, bundle: BagBundle) -> list[int]:
    union = bundle.union
    adj = [0] * g.n
    for v in members(union):
        a = g.adj[v]
        for clique in (bundle.X_max, bundle.X_p, bundle.X_min):
            if clique >> v & 1:
                a |= clique
        adj[v] = a & union & ~(1 << v)
    return adj


def local_graph(g: Graph, bundle: BagBundle) -> Graph:
    """G' restricted to the bundle union, on the original vertex ids."""
    return Graph._from_adj(_local_graph(g, bundle))


def _clique_piece(adj: list[int], clique: VertexSet, piece: VertexSet) -> Graph:
    within = clique | piece
    sub = [0] * len(adj)
    for v in members(within):
        a = adj[v] & within
        if clique >> v & 1:
            a |= clique
        sub[v] = a & ~(1 << v)
    return Graph._from_adj(sub)


def ltw(g: Graph, bundle: BagBundle, k: int | None = None):
    """Decide tw(G'[bundle union]) <= k and build a witnessing decomposition.

    Returns (ok, td). The decomposition is rooted at a node with bag X_p and
    ``td.anchor`` is a leaf whose bag is X_min. With k=None the answer is
    always true and the decomposition has minimum width.
    """
    if not bundle.feasible:
        return False, None
    limit = None if k is None else k + 1
    adj = _local_graph(g, bundle)
    union = bundle.union
    bags = {1: bundle.X_max | bundle.X_p, 2: bundle.X_min}
    if limit is not None and max(size(bags[1]), size(bags[2])) > limit:
        return False, None
    td = TreeDecomposition([bags[1], bags[2]], [], 0)
    current = {1: 0, 2: 1}
    alive = union
    forest = union & ~(bags[1] | bags[2])
    biggest = max(size(bags[1]), size(bags[2]))

    def hang(comp: VertexSet, side: int) -> bool:
        nonlocal alive, forest, biggest
        piece_width, piece = clique_forest_td(_clique_piece(adj, bags[side], comp), bags[side], comp)
        biggest = max(biggest, piece_width + 1)
        if limit is not None and biggest > limit:
            return False
        attach(td, current[side], piece)
        alive &= ~comp
        forest &= ~comp
        return True

    def grow(side: int, bag: VertexSet) -> bool:
        nonlocal biggest
        current[side] = td.add_node(bag, current[side])
        bags[side] = bag
        biggest = max(biggest, size(bag))
        return limit is None or biggest <= limit

    for comp in connected_components(g, forest):
        nbrs = _neighbors(adj, comp, alive)
        side = 1 if nbrs & ~bags[1] == 0 else 2 if nbrs & ~bags[2] == 0 else 0
        if side and not hang(comp, side):
            return False, None

    while bags[1] != bags[2]:
        diff = bags[1] ^ bags[2]
        progressed = False
        for comp in connected_components(g, forest):
            nbrs = _neighbors(adj, comp, alive)
            if size(nbrs & diff) != 1:
                continue
            side = 1 if nbrs & ~bags[1] == 0 else 2 if nbrs & ~bags[2] == 0 else 0
            if side:
                if not hang(comp, side):
                    return False, None
                progressed = True
                break
        if progressed:
            continue
        for v in members(diff):
            side = 1 if bags[1] >> v & 1 else 2
            if adj[v] & alive & ~bags[side] == 0:
                if not grow(side, bags[side] & ~(1 << v)):
                    return False, None
                alive &= ~(1 << v)
                progressed = True
                break
        if progressed:
            continue
        for v in members(diff):
            side = 1 if bags[1] >> v & 1 else 2
            extra = adj[v] & alive & ~bags[side]
            if extra & (extra - 1) == 0:
                u = lowest(extra)
                if not grow(side, bags[side] | 1 << u):
                    return False, None
                if not grow(side, bags[side] & ~(1 << v)):
                    return False, None
                alive &= ~(1 << v)
                forest &= ~(1 << u)
                progressed = True
                break
        if not progressed:
            if is_forest(g, diff | forest):
                raise LocalPreconditionError("no merge step applies although the merge region is a forest")
            return False, None

    td.edges.append((current[1], current[2]))
    if forest:
        if not hang(forest, 1):
            return False, None
    # Node 1 carries X_min; reuse it as the anchor leaf when nothing hangs below it.
    anchor = 1 if sum(1 in e for e in td.edges) == 1 else td.add_node(bundle.X_min, 1)
    if bundle.X_p != td.bags[0]:
        root = td.add_node(bundle.X_p, 0)
        td.root = root
    td.anchor = anchor
    return True, td
