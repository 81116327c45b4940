"""Graph types and the exact combinatorial primitives the rest of the package uses.

Vertices are dense 0-based integers. Multigraph edges are identified by their
position in the edge sequence, which keeps references stable across the
line-graph construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import InvalidInput

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidInput(f"negative vertex count {self.n}")
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise InvalidInput(f"edge {(u, v)} is not a normalized pair inside 0..{self.n - 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> SimpleGraph:
        """Build a graph from arbitrary vertex pairs, rejecting loops and duplicates."""
        seen: set[Edge] = set()
        for pair in edges:
            u, v = (int(x) for x in pair)
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge {(u, v)} out of range for n={n}")
            e = _norm(u, v)
            if e in seen:
                raise InvalidInput(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edge_list(self) -> list[Edge]:
        """Edges in lexicographic order; the position of an edge is its identity."""
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))


@dataclass(frozen=True)
class BipartiteMultigraph:
    """Bipartite multigraph; ``edges[i] = (l, r)`` joins left ``l`` to right ``r``."""

    left: int
    right: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.left < 0 or self.right < 0:
            raise InvalidInput("negative side size")
        edges = tuple((int(l), int(r)) for l, r in self.edges)
        for l, r in edges:
            if not (0 <= l < self.left and 0 <= r < self.right):
                raise InvalidInput(f"edge {(l, r)} does not cross the bipartition")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def left_degree(self, l: int) -> int:
        return sum(1 for a, _ in self.edges if a == l)

    def right_degree(self, r: int) -> int:
        return sum(1 for _, b in self.edges if b == r)

    def max_degree(self) -> int:
        """Maximum degree counted with multiplicity."""
        degs = [0] * (self.left + self.right)
        for l, r in self.edges:
            degs[l] += 1
            degs[self.left + r] += 1
        return max(degs, default=0)

    def shares_endpoint(self, i: int, j: int) -> bool:
        (a, b), (c, d) = self.edges[i], self.edges[j]
        return a == c or b == d


@dataclass(frozen=True)
class EdgeIndexMap:
    """Bijection between line-graph vertices and root multigraph edge identities."""

    vertex_to_edge: tuple[int, ...]

    def edge_of(self, vertex: int) -> int:
        return self.vertex_to_edge[vertex]

    def vertex_of(self, edge: int) -> int:
        return self.vertex_to_edge.index(edge)


def line_graph(b: BipartiteMultigraph) -> tuple[SimpleGraph, EdgeIndexMap]:
    """Line graph of ``b``; vertex ``i`` is edge ``i`` of ``b``.

    Parallel edges share both endpoints and are therefore adjacent.
    """
    if b.m == 0:
        raise InvalidInput("line graph of a multigraph without edges")
    at_left: dict[int, list[int]] = {}
    at_right: dict[int, list[int]] = {}
    for i, (l, r) in enumerate(b.edges):
        at_left.setdefault(l, []).append(i)
        at_right.setdefault(r, []).append(i)
    edges: set[Edge] = set()
    for group in (*at_left.values(), *at_right.values()):
        edges.update(combinations(group, 2))
    return SimpleGraph(b.m, frozenset(edges)), EdgeIndexMap(tuple(range(b.m)))


class BipartiteCheck(NamedTuple):
    """Outcome of :func:`is_bipartite`: exactly one of the fields is set."""

    parts: tuple[frozenset[int], frozenset[int]] | None
    odd_cycle: list[int] | None

    def __bool__(self) -> bool:
        return self.parts is not None


def is_bipartite(g: SimpleGraph) -> BipartiteCheck:
    """BFS two-coloring.

    Components are rooted at their smallest vertex, which always lands in the
    first part. On failure the witness is a simple odd cycle of ``g`` given as
    a vertex sequence (closing edge implied).
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in g.vertices:
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(g.adj[u]):
                if side[v] == -1:
                    side[v] = 1 - side[u]
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif side[v] == side[u]:
                    return BipartiteCheck(None, _odd_cycle(u, v, parent, depth))
    first = frozenset(v for v in g.vertices if side[v] == 0)
    second = frozenset(v for v in g.vertices if side[v] == 1)
    return BipartiteCheck((first, second), None)


def _odd_cycle(u: int, v: int, parent: list[int], depth: list[int]) -> list[int]:
    # u, v share a side, so their BFS depths are equal; walk up to the meeting point.
    path_u, path_v = [u], [v]
    a, b = u, v
    while depth[a] > depth[b]:
        a = parent[a]
        path_u.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        path_v.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        path_u.append(a)
        path_v.append(b)
    # path_u ends at the meeting vertex; path_v repeats it.
    return path_u + path_v[-2::-1]


def max_matching_bipartite(
    g: SimpleGraph, parts: tuple[Iterable[int], Iterable[int]]
) -> set[Edge]:
    """Maximum matching by repeated augmenting-path search (Kuhn).

    Returned pairs are ``(left, right)`` with ``left`` taken from ``parts[0]``.
    """
    left, right = frozenset(parts[0]), frozenset(parts[1])
    if left & right or (left | right) != frozenset(g.vertices):
        raise InvalidInput("parts must partition the vertex set")
    for u, v in g.edges:
        if (u in left) == (v in left):
            raise InvalidInput(f"edge {(u, v)} lies inside one part")
    match_of: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in sorted(g.adj[u]):
            if v in seen:
                continue
            seen.add(v)
            if v not in match_of or augment(match_of[v], seen):
                match_of[v] = u
                return True
        return False

    for u in sorted(left):
        augment(u, set())
    return {(u, v) for v, u in match_of.items()}


def _greedy_color_order(g: SimpleGraph, cand: list[int]) -> tuple[list[int], list[int]]:
    """Sequential greedy coloring of ``cand``; returns vertices sorted by color and the colors."""
    classes: list[list[int]] = []
    for v in cand:
        for cls in classes:
            if not (g.adj[v] & set(cls)):
                cls.append(v)
                break
        else:
            classes.append([v])
    order: list[int] = []
    bounds: list[int] = []
    for k, cls in enumerate(classes, start=1):
        order.extend(cls)
        bounds.extend([k] * len(cls))
    return order, bounds


def max_clique_desk(g: SimpleGraph) -> frozenset[int]:
    """Exact maximum clique by branch and bound with a greedy-coloring bound.

    Intended for small graphs (n up to about 25). Expansion order is
    deterministic so repeated calls return the same clique.
    """
    best: list[int] = []

    def expand(current: list[int], cand: list[int]) -> None:
        nonlocal best
        order, bounds = _greedy_color_order(g, cand)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= len(best):
                return
            v = order[i]
            new_current = current + [v]
            new_cand = [w for w in order[:i] if w in g.adj[v]]
            if new_cand:
                expand(new_current, new_cand)
            elif len(new_current) > len(best):
                best = new_current
    start = sorted(g.vertices, key=lambda v: (-g.degree(v), v))
    expand([], start)
    return frozenset(best)


def clique_number(g: SimpleGraph) -> int:
    return len(max_clique_desk(g))


def maximal_cliques(g: SimpleGraph) -> list[frozenset[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting), sorted for determinism."""
    out: list[frozenset[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda u: (len(g.adj[u] & p), -u))
        for v in sorted(p - g.adj[pivot]):
            bk(r | {v}, p & g.adj[v], x & g.adj[v])
            p = p - {v}
            x = x | {v}

    if g.n:
        bk(set(), set(g.vertices), set())
    return sorted(out, key=lambda c: (len(c), sorted(c)))


def maximum_cliques(g: SimpleGraph) -> list[frozenset[int]]:
    """Every clique of maximum cardinality."""
    cliques = maximal_cliques(g)
    if not cliques:
        return []
    top = max(len(c) for c in cliques)
    return [c for c in cliques if len(c) == top]


def induced_subgraph(g: SimpleGraph, s: Iterable[int]) -> tuple[SimpleGraph, tuple[int, ...]]:
    """Subgraph induced on ``s``; new vertex ``i`` is original vertex ``index_map[i]``."""
    index_map = tuple(sorted(set(s)))
    for v in index_map:
        if not 0 <= v < g.n:
            raise InvalidInput(f"vertex {v} out of range for n={g.n}")
    pos = {v: i for i, v in enumerate(index_map)}
    edges = frozenset(
        _norm(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    )
    return SimpleGraph(len(index_map), edges), index_map


def complement(g: SimpleGraph) -> SimpleGraph:
    edges = frozenset(e for e in combinations(range(g.n), 2) if e not in g.edges)
    return SimpleGraph(g.n, edges)


def relabel(g: SimpleGraph, mapping: dict[int, int], n: int) -> SimpleGraph:
    """Image of ``g`` under an injective vertex map into ``0..n-1``."""
    return SimpleGraph(n, frozenset(_norm(mapping[u], mapping[v]) for u, v in g.edges))
