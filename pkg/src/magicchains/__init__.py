"""Neighbourhood chains and distance magic labelings of graphs."""

from .graph_core import Graph, GraphError, cylindrical_grid, from_edge_list
from .magic_solver import MagicResult, certify_ndm, solve, solve_exhaustive, verify_labeling

__all__ = [
    "Graph",
    "GraphError",
    "MagicResult",
    "certify_ndm",
    "cylindrical_grid",
    "from_edge_list",
    "solve",
    "solve_exhaustive",
    "verify_labeling",
]

__version__ = "0.1.0"
