"""Gallai graph construction and elementary-graph recognition.

A graph is elementary exactly when its Gallai graph is bipartite; the two
sides of the bipartition give the pink/green edge tagging.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping

from .errors import InvalidInput
from .graph_core import Edge, SimpleGraph, is_bipartite

PINK = "pink"
GREEN = "green"


@dataclass(frozen=True)
class GallaiGraph:
    """``graph`` has one vertex per edge of the source; ``edges[i]`` is source edge ``i``."""

    graph: SimpleGraph
    edges: tuple[Edge, ...]

    def source_edge(self, vertex: int) -> Edge:
        return self.edges[vertex]


EdgeBicoloring = Mapping[Edge, str]


def induced_p3s(g: SimpleGraph) -> Iterator[tuple[Edge, Edge]]:
    """Pairs of edges ``(a,b), (b,c)`` with ``a`` and ``c`` non-adjacent."""
    for b in g.vertices:
        for a, c in combinations(sorted(g.adj[b]), 2):
            if not g.has_edge(a, c):
                yield (min(a, b), max(a, b)), (min(b, c), max(b, c))


def gallai_graph(g: SimpleGraph) -> GallaiGraph:
    edges = tuple(g.edge_list())
    index = {e: i for i, e in enumerate(edges)}
    gal_edges = set()
    for e, f in induced_p3s(g):
        i, j = index[e], index[f]
        gal_edges.add((min(i, j), max(i, j)))
    return GallaiGraph(SimpleGraph(len(edges), frozenset(gal_edges)), edges)


class Recognition:
    """Result of :func:`is_elementary`; truthy iff the graph is elementary."""

    __slots__ = ("bicoloring", "odd_gallai_cycle")

    def __init__(self, bicoloring: dict[Edge, str] | None, odd_gallai_cycle: list[Edge] | None):
        self.bicoloring = bicoloring
        self.odd_gallai_cycle = odd_gallai_cycle

    def __bool__(self) -> bool:
        return self.bicoloring is not None

    def __repr__(self) -> str:
        if self:
            return f"Recognition(elementary, {len(self.bicoloring)} edges)"
        return f"Recognition(witness={self.odd_gallai_cycle})"


def is_elementary(g: SimpleGraph) -> Recognition:
    """Decide elementaryness.

    Success carries a pink/green tag per edge (the side holding the smallest
    edge identity of each Gallai component is pink, so isolated Gallai
    vertices are pink). Failure carries an odd cycle of the Gallai graph as a
    cyclic sequence of source edges.
    """
    gal = gallai_graph(g)
    check = is_bipartite(gal.graph)
    if check.parts is None:
        return Recognition(None, [gal.edges[i] for i in check.odd_cycle])
    first, _ = check.parts
    tags = {gal.edges[i]: (PINK if i in first else GREEN) for i in range(len(gal.edges))}
    return Recognition(tags, None)


def verify_bicoloring(g: SimpleGraph, b: EdgeBicoloring) -> bool:
    """True iff every induced P3 of ``g`` has differently tagged edges."""
    missing = [e for e in g.edges if e not in b]
    if missing:
        raise InvalidInput(f"bicoloring misses edges {sorted(missing)[:5]}")
    bad = [t for e, t in b.items() if t not in (PINK, GREEN)]
    if bad:
        raise InvalidInput(f"unknown edge tags {sorted(set(bad))}")
    return all(b[e] != b[f] for e, f in induced_p3s(g))


def pink_graph(g: SimpleGraph, b: EdgeBicoloring) -> SimpleGraph:
    return SimpleGraph(g.n, frozenset(e for e in g.edges if b[e] == PINK))


def green_graph(g: SimpleGraph, b: EdgeBicoloring) -> SimpleGraph:
    return SimpleGraph(g.n, frozenset(e for e in g.edges if b[e] == GREEN))
