"""Intrinsic linking and knotting of small graphs via graph minors."""
from .graph import Graph, parse_graph, serialize_graph
from .canon import canonical_form, is_isomorphic
from .minor import find_minor_witness, has_minor, is_planar
from .classifier import decide_knotting, decide_linking

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "parse_graph",
    "serialize_graph",
    "canonical_form",
    "is_isomorphic",
    "has_minor",
    "find_minor_witness",
    "is_planar",
    "decide_linking",
    "decide_knotting",
]
