"""Node-weighted chordal vertex deletion parameterized by treewidth."""

from .errors import ChvdError
from .graph import WeightedGraph, is_chordal, is_interval
from .oracle import RandomSpec, brute_force_chvd, random_instance
from .solver import Solution, solve, solve_graph
from .treedecomp import TreeDecomposition, make_nice, min_fill_decomposition

__all__ = [
    "ChvdError",
    "RandomSpec",
    "Solution",
    "TreeDecomposition",
    "WeightedGraph",
    "brute_force_chvd",
    "is_chordal",
    "is_interval",
    "make_nice",
    "min_fill_decomposition",
    "random_instance",
    "solve",
    "solve_graph",
]
