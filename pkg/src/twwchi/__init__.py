"""Decomposition trees, mixed minors and coloring algorithms for ordered graphs."""
from .amf import AmfInstance, color_amf, color_cograph
from .delayed import build_delayed_tree, odd_even_split, realize_delayed
from .graph import Coloring, Interval, IntervalPartition, OrderedGraph, generate, parse_graph, verify_coloring
from .matrix import TriMatrix, adjacency_matrix, classify, find_almost_mixed_minor, find_corner, find_mixed_minor
from .mixext import color_mixed_extension, greedy_omega_intervals, mixed_subgraph
from .rmp import RMPartition, is_pair_amf, lift_quotient_coloring, quotient, transversal_minor, validate_rmp
from .subst import SubstTree, color_substitution, realize_subst

__version__ = "0.1.0"

__all__ = [
    "AmfInstance",
    "Coloring",
    "Interval",
    "IntervalPartition",
    "OrderedGraph",
    "RMPartition",
    "SubstTree",
    "TriMatrix",
    "adjacency_matrix",
    "build_delayed_tree",
    "classify",
    "color_amf",
    "color_cograph",
    "color_mixed_extension",
    "color_substitution",
    "find_almost_mixed_minor",
    "find_corner",
    "find_mixed_minor",
    "generate",
    "greedy_omega_intervals",
    "is_pair_amf",
    "lift_quotient_coloring",
    "mixed_subgraph",
    "odd_even_split",
    "parse_graph",
    "quotient",
    "realize_delayed",
    "realize_subst",
    "transversal_minor",
    "validate_rmp",
    "verify_coloring",
]
