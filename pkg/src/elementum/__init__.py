"""Recognition, construction and constructive list coloring of elementary graphs."""

from .augmentation import (
    CobipartiteAugment,
    ElementaryPresentation,
    augment_along,
    build_gstar,
    is_flat_edge,
    realize,
)
from .engine import EngineStats, list_color_elementary, verify_coloring
from .errors import CertificateError, InvalidInput
from .gallai import gallai_graph, is_elementary, verify_bicoloring
from .galvin import koenig_edge_coloring, list_edge_color
from .graph_core import BipartiteMultigraph, SimpleGraph, line_graph

__all__ = [
    "BipartiteMultigraph",
    "CertificateError",
    "CobipartiteAugment",
    "ElementaryPresentation",
    "EngineStats",
    "InvalidInput",
    "SimpleGraph",
    "augment_along",
    "build_gstar",
    "gallai_graph",
    "is_elementary",
    "is_flat_edge",
    "koenig_edge_coloring",
    "line_graph",
    "list_color_elementary",
    "list_edge_color",
    "realize",
    "verify_bicoloring",
    "verify_coloring",
]
