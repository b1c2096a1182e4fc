"""Exact fractional coloring, Kneser blow-ups, and triangle-free / high-girth subgraph experiments."""
from .config import CAPS, CapExceeded, Caps
from .fractional import (
    FractionalColoring,
    VertexWeighting,
    alpha_f_weights,
    chi_f,
    fractional_chromatic,
    verify_fractional_coloring,
)
from .graph import Graph, VertexOrder, chromatic_number, girth, parse_dimacs, format_dimacs

__all__ = [
    "CAPS",
    "CapExceeded",
    "Caps",
    "FractionalColoring",
    "Graph",
    "VertexOrder",
    "VertexWeighting",
    "alpha_f_weights",
    "chi_f",
    "chromatic_number",
    "format_dimacs",
    "fractional_chromatic",
    "girth",
    "parse_dimacs",
    "verify_fractional_coloring",
]
__version__ = "0.1.0"
