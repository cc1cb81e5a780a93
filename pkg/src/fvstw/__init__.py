"""Exact treewidth parameterized by the feedback vertex number."""

from .graph import Graph, vset, members
from .decomposition import TreeDecomposition, validate, width
from .dp import SolveConfig, SolveStats, decide, treewidth
from .fvs import min_fvs
from .oracle import oracle_treewidth, oracle_decide

__all__ = [
    "Graph",
    "TreeDecomposition",
    "SolveConfig",
    "SolveStats",
    "decide",
    "members",
    "min_fvs",
    "oracle_decide",
    "oracle_treewidth",
    "treewidth",
    "validate",
    "vset",
    "width",
]
