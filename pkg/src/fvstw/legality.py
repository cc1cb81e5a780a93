"""Vertex tripartition of a state and the predecessor compatibility tests."""

from __future__ import annotations

from typing import NamedTuple

from .bags import BagBundle
from .graph import Graph, VertexSet, closed_neighbors, component_of


class LXR(NamedTuple):
    V_L: VertexSet
    V_X: VertexSet
    V_R: VertexSet
    X_min: VertexSet

    @property
    def covered(self) -> VertexSet:
        """V_L + V_X: the vertices the partial decomposition below the state covers."""
        return self.V_L | self.V_X


def partition_lxr(g: Graph, L: VertexSet, bundle: BagBundle) -> LXR | None:
    """V_L, V_X and V_R of a state with left side L and the given bags.

    Returns None when V_L meets V_X: no decomposition realises such a state,
    so it can never be part of a witness.
    """
    seeds = L | (bundle.X_c & ~bundle.X_min)
    v_l = component_of(g, seeds, g.all & ~bundle.X_min)
    v_x = bundle.union
    if v_l & v_x:
        return None
    return LXR(v_l, v_x, g.all & ~(v_l | v_x), bundle.X_min)


def legal1(g: Graph, phi: LXR, psi: LXR) -> bool:
    covered = psi.covered
    return (
        covered & ~phi.covered == 0
        and closed_neighbors(g, psi.V_R) & phi.V_L == 0
        and covered & phi.V_X & ~phi.X_min == 0
    )


def legal2_single(phi: LXR, psi: LXR) -> bool:
    """The conditions of legal2 that involve only one of the two predecessors."""
    covered = psi.covered
    return covered & ~phi.covered == 0 and covered & phi.V_X & ~phi.X_min == 0


def legal2(g: Graph, phi: LXR, psi1: LXR, psi2: LXR) -> bool:
    cov1, cov2 = psi1.covered, psi2.covered
    return (
        legal2_single(phi, psi1)
        and legal2_single(phi, psi2)
        and closed_neighbors(g, psi1.V_R) & phi.V_L & ~cov2 == 0
        and closed_neighbors(g, psi2.V_R) & phi.V_L & ~cov1 == 0
        and cov1 & cov2 & ~phi.X_min == 0
    )
