"""Elementary graphs as augmentations of line graphs of bipartite multigraphs.

A presentation names the root multigraph ``b``, a sequence of pairwise
non-incident flat edges of ``L(b)`` (each given as an ordered pair of edge
identities of ``b``, the first standing for ``x`` and the second for ``y``) and
one cobipartite augment per flat edge.

Realized vertex numbering: the untouched line-graph vertices come first in
edge-identity order, followed by the ``X`` block then the ``Y`` block of each
augment in input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import CertificateError, InvalidInput
from .graph_core import (
    BipartiteMultigraph,
    SimpleGraph,
    clique_number,
    line_graph,
)

RootVertex = tuple[str, int]  # ("L", l) or ("R", r) in the root multigraph


@dataclass(frozen=True)
class CobipartiteAugment:
    """Cobipartite ``H = (X, Y, E_XY)``; ``cross_edges`` holds ``(x_index, y_index)`` pairs."""

    x_size: int
    y_size: int
    cross_edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "cross_edges", frozenset((int(a), int(b)) for a, b in self.cross_edges)
        )
        if self.x_size < 1 or self.y_size < 1:
            raise InvalidInput("augment sides must be nonempty")
        for a, b in self.cross_edges:
            if not (0 <= a < self.x_size and 0 <= b < self.y_size):
                raise InvalidInput(f"cross edge {(a, b)} out of range")
        if not self.cross_edges:
            raise InvalidInput("augment needs at least one cross edge")
        if len(self.cross_edges) == self.x_size * self.y_size:
            raise InvalidInput("augment must not induce a clique")

    @property
    def size(self) -> int:
        return self.x_size + self.y_size

    def non_edges(self) -> list[tuple[int, int]]:
        return [
            (a, b)
            for a in range(self.x_size)
            for b in range(self.y_size)
            if (a, b) not in self.cross_edges
        ]


def flat_edge_roots(b: BipartiteMultigraph, ex: int, ey: int) -> tuple[RootVertex, RootVertex, RootVertex]:
    """``(v_x, v_xy, v_y)`` for a line-graph edge between root edges ``ex`` and ``ey``."""
    (lx, rx), (ly, ry) = b.edges[ex], b.edges[ey]
    if lx == ly:
        return ("R", rx), ("L", lx), ("R", ry)
    if rx == ry:
        return ("L", lx), ("R", rx), ("L", ly)
    raise InvalidInput(f"root edges {ex} and {ey} share no endpoint")


def is_flat_edge(g: SimpleGraph, e: tuple[int, int]) -> bool:
    """True iff the edge ``e`` lies in no triangle."""
    u, v = e
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise InvalidInput(f"{e} is not an edge")
    return not (g.adj[u] & g.adj[v])


@dataclass(frozen=True)
class ElementaryPresentation:
    b: BipartiteMultigraph
    flat_edges: tuple[tuple[int, int], ...]
    augments: tuple[CobipartiteAugment, ...]

    def __post_init__(self) -> None:
        flats = tuple((int(a), int(c)) for a, c in self.flat_edges)
        object.__setattr__(self, "flat_edges", flats)
        object.__setattr__(self, "augments", tuple(self.augments))
        if len(flats) != len(self.augments):
            raise InvalidInput("one augment per flat edge required")
        used: set[int] = set()
        if flats:
            lg, _ = line_graph(self.b)
        for ex, ey in flats:
            if not (0 <= ex < self.b.m and 0 <= ey < self.b.m) or ex == ey:
                raise InvalidInput(f"flat edge {(ex, ey)} does not name two root edges")
            if not lg.has_edge(ex, ey):
                raise InvalidInput(f"{(ex, ey)} is not an edge of the line graph")
            if not is_flat_edge(lg, (ex, ey)):
                raise InvalidInput(f"{(ex, ey)} lies in a triangle of the line graph")
            if {ex, ey} & used:
                raise InvalidInput(f"flat edge {(ex, ey)} is incident to an earlier one")
            used.update((ex, ey))

    @property
    def h(self) -> int:
        return len(self.augments)


@dataclass(frozen=True)
class AugmentBlock:
    """Where augment ``i`` lives in the realization and which root edges it replaced."""

    x_vertices: tuple[int, ...]
    y_vertices: tuple[int, ...]
    edge_x: int
    edge_y: int
    v_x: RootVertex
    v_xy: RootVertex
    v_y: RootVertex

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.x_vertices) | frozenset(self.y_vertices)


@dataclass(frozen=True)
class AugmentLocator:
    blocks: tuple[AugmentBlock, ...]
    edge_vertex: dict[int, int]  # untouched root edge -> realized vertex

    def __hash__(self) -> int:
        return hash(self.blocks)


def realize(p: ElementaryPresentation) -> tuple[SimpleGraph, AugmentLocator]:
    """The simple graph described by ``p`` together with its locator."""
    lg = line_graph(p.b)[0] if p.b.m else SimpleGraph(0, frozenset())
    augmented = {e for pair in p.flat_edges for e in pair}
    untouched = [e for e in range(p.b.m) if e not in augmented]
    rep: list[int] = list(untouched)  # realized vertex -> root edge it stands for
    side: list[tuple[int, int, int] | None] = [None] * len(untouched)  # (block, 0|1, index)
    edge_vertex = {e: i for i, e in enumerate(untouched)}
    blocks = []
    for i, ((ex, ey), aug) in enumerate(zip(p.flat_edges, p.augments)):
        start = len(rep)
        xs = tuple(range(start, start + aug.x_size))
        ys = tuple(range(start + aug.x_size, start + aug.size))
        rep.extend([ex] * aug.x_size + [ey] * aug.y_size)
        side.extend([(i, 0, k) for k in range(aug.x_size)] + [(i, 1, k) for k in range(aug.y_size)])
        v_x, v_xy, v_y = flat_edge_roots(p.b, ex, ey)
        blocks.append(AugmentBlock(xs, ys, ex, ey, v_x, v_xy, v_y))
    edges = set()
    for u, v in combinations(range(len(rep)), 2):
        su, sv = side[u], side[v]
        if su is not None and sv is not None and su[0] == sv[0]:
            if su[1] == sv[1]:
                edges.add((u, v))
            else:
                xk, yk = (su[2], sv[2]) if su[1] == 0 else (sv[2], su[2])
                if (xk, yk) in p.augments[su[0]].cross_edges:
                    edges.add((u, v))
        elif lg.has_edge(rep[u], rep[v]):
            edges.add((u, v))
    return SimpleGraph(len(rep), frozenset(edges)), AugmentLocator(tuple(blocks), edge_vertex)


def augment_along(
    g: SimpleGraph, e: tuple[int, int], h: CobipartiteAugment
) -> tuple[SimpleGraph, tuple[int, ...], tuple[int, ...]]:
    """Replace the flat edge ``e = (x, y)`` of ``g`` by the augment ``h``.

    Surviving vertices keep their relative order and come first; the ``X``
    block and then the ``Y`` block follow. Returns the graph and both blocks.
    """
    x, y = e
    if not is_flat_edge(g, e):
        raise InvalidInput(f"{e} is not a flat edge")
    keep = [v for v in g.vertices if v not in (x, y)]
    pos = {v: i for i, v in enumerate(keep)}
    xs = tuple(range(len(keep), len(keep) + h.x_size))
    ys = tuple(range(xs[-1] + 1, xs[-1] + 1 + h.y_size))
    edges = {(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos}
    edges.update(combinations(xs, 2))
    edges.update(combinations(ys, 2))
    edges.update((xs[a], ys[b]) for a, b in h.cross_edges)
    for w in g.adj[x] - {y}:
        edges.update((min(pos[w], xv), max(pos[w], xv)) for xv in xs)
    for w in g.adj[y] - {x}:
        edges.update((min(pos[w], yv), max(pos[w], yv)) for yv in ys)
    return SimpleGraph(len(keep) + h.size, frozenset(edges)), xs, ys


def outer_neighborhoods(g: SimpleGraph, block: AugmentBlock) -> tuple[frozenset[int], frozenset[int]]:
    """``(N_X, N_Y)``: neighbours of each side outside the augment."""
    inside = block.vertices
    nx = frozenset().union(*(g.adj[v] for v in block.x_vertices)) - inside
    ny = frozenset().union(*(g.adj[v] for v in block.y_vertices)) - inside
    return nx, ny


def _rebuild(
    p: ElementaryPresentation,
    drop: Sequence[int],
    extra: Sequence[int],
    keep_augments: int,
) -> tuple[ElementaryPresentation, list[int | None]]:
    """Root edges minus ``drop`` plus copies of the root edges ``extra``; first augments kept.

    Returns the new presentation and, per new edge, the old edge it descends
    from (``None`` for appended copies).
    """
    dropped = set(drop)
    origin: list[int | None] = [e for e in range(p.b.m) if e not in dropped]
    new_index = {e: i for i, e in enumerate(origin)}
    edges = [p.b.edges[e] for e in origin] + [p.b.edges[e] for e in extra]
    origin.extend([None] * len(extra))
    flats = tuple((new_index[a], new_index[c]) for a, c in p.flat_edges[:keep_augments])
    b = BipartiteMultigraph(p.b.left, p.b.right, tuple(edges))
    return ElementaryPresentation(b, flats, p.augments[:keep_augments]), origin


def _carry(
    old: AugmentLocator, new: AugmentLocator, origin: Sequence[int | None]
) -> dict[int, int]:
    """Map realized vertices of the new presentation onto those of the old one they descend from."""
    mapping: dict[int, int] = {}
    for e, v in new.edge_vertex.items():
        o = origin[e]
        if o is not None and o in old.edge_vertex:
            mapping[v] = old.edge_vertex[o]
    for nb, ob in zip(new.blocks, old.blocks):
        mapping.update(zip(nb.x_vertices, ob.x_vertices))
        mapping.update(zip(nb.y_vertices, ob.y_vertices))
    return mapping


def without_last_augment(
    p: ElementaryPresentation,
) -> tuple[ElementaryPresentation, dict[int, int]]:
    """Presentation realizing ``G - (X u Y)`` for the last augment.

    Both root edges behind the last flat edge are deleted. The map sends
    realized vertices of the result to the vertices of ``realize(p)`` they
    stand for.
    """
    if p.h == 0:
        raise InvalidInput("presentation has no augment to remove")
    ex, ey = p.flat_edges[-1]
    sub, origin = _rebuild(p, (ex, ey), (), p.h - 1)
    _, old_loc = realize(p)
    _, new_loc = realize(sub)
    return sub, _carry(old_loc, new_loc, origin)


@dataclass(frozen=True)
class GStar:
    """Result of the Case-2 reconstruction with its vertex correspondence."""

    presentation: ElementaryPresentation
    carried: dict[int, int]  # G* vertex outside X* u Y* -> vertex of G outside X u Y
    x_star: tuple[int, ...]
    y_star: tuple[int, ...]

    def __hash__(self) -> int:
        return hash((self.presentation, self.x_star, self.y_star))


def gstar_with_map(
    p: ElementaryPresentation, last_augment_data: tuple[int, int, int]
) -> GStar:
    """Replace the last augment by a clique ``X* u Y*`` of size ``k1 - mu + k2``.

    ``k1`` is the larger side of the last augment (``X`` on ties) and ``k2``
    the smaller; the root edge of the larger side is duplicated to
    multiplicity ``k1 - mu`` and the other to multiplicity ``k2``.
    """
    k1, k2, mu = (int(v) for v in last_augment_data)
    if p.h == 0:
        raise InvalidInput("G* needs at least one augment")
    aug = p.augments[-1]
    if (k1, k2) != (max(aug.x_size, aug.y_size), min(aug.x_size, aug.y_size)):
        raise InvalidInput(f"(k1, k2)=({k1}, {k2}) does not match augment sides {(aug.x_size, aug.y_size)}")
    if not 0 <= mu < k2:
        raise InvalidInput(f"mu={mu} must satisfy 0 <= mu < k2={k2}")
    ex, ey = p.flat_edges[-1]
    big, small = (ex, ey) if aug.x_size >= aug.y_size else (ey, ex)
    extra = [big] * (k1 - mu) + [small] * k2
    star, origin = _rebuild(p, (ex, ey), extra, p.h - 1)
    _, old_loc = realize(p)
    _, new_loc = realize(star)
    carried = _carry(old_loc, new_loc, origin)
    first = len(origin) - len(extra)
    copies = [new_loc.edge_vertex[e] for e in range(first, len(origin))]
    big_copies, small_copies = tuple(copies[: k1 - mu]), tuple(copies[k1 - mu:])
    if big == ex:
        x_star, y_star = big_copies, small_copies
    else:
        x_star, y_star = small_copies, big_copies
    return GStar(star, carried, x_star, y_star)


def build_gstar(
    p: ElementaryPresentation, last_augment_data: tuple[int, int, int]
) -> ElementaryPresentation:
    """Presentation of ``G*``; checks that the clique number did not grow."""
    star = gstar_with_map(p, last_augment_data).presentation
    before = clique_number(realize(p)[0])
    after = clique_number(realize(star)[0])
    if after > before:
        raise CertificateError(
            "internal",
            f"clique number grew from {before} to {after} in G*",
            {"omega_g": before, "omega_gstar": after},
        )
    return star


def presentation_vertices(p: ElementaryPresentation) -> int:
    aug = {e for pair in p.flat_edges for e in pair}
    return p.b.m - len(aug) + sum(a.size for a in p.augments)


def line_graph_presentation(b: BipartiteMultigraph) -> ElementaryPresentation:
    return ElementaryPresentation(b, (), ())


def flat_edges_of(b: BipartiteMultigraph) -> list[tuple[int, int]]:
    """Flat edges of ``L(b)`` as ordered pairs ``(i, j)`` with ``i < j``."""
    lg, _ = line_graph(b)
    return [e for e in lg.edge_list() if is_flat_edge(lg, e)]


def cross_pairs(xs: Iterable[int], ys: Iterable[int]) -> list[tuple[int, int]]:
    return [(x, y) for x in xs for y in ys]
