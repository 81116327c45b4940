"""Constructive list coloring of elementary graphs from lists of size omega.

The engine follows the induction on the number of augments. With no augment
the graph is the line graph of a bipartite multigraph and the kernel method
colors it. Otherwise the last augment ``H = (X, Y)`` is removed, the rest is
colored recursively and the coloring is extended to ``X u Y`` from the
restricted lists ``L'``. When that extension is impossible the rest of the
graph is recolored through the reduced graph ``G*`` in which ``X u Y`` becomes
a clique with copies of the lists of a blocking pair ``(x1, y1)``.

Every returned coloring is verified before it leaves the module.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Any, Iterable, Mapping

from . import augmentation as aug
from .errors import CertificateError, InvalidInput
from .galvin import list_edge_color
from .graph_core import (
    SimpleGraph,
    clique_number,
    induced_subgraph,
    max_matching_bipartite,
    maximal_cliques,
    maximum_cliques,
)

log = logging.getLogger(__name__)

ListAssignment = dict[int, frozenset[int]]
Coloring = dict[int, int]


def as_lists(lists: Mapping[int, Iterable[int]]) -> ListAssignment:
    out = {int(v): frozenset(int(c) for c in cs) for v, cs in lists.items()}
    for v, cs in out.items():
        if not cs:
            raise InvalidInput(f"vertex {v} has an empty list")
        if min(cs) < 0:
            raise InvalidInput(f"vertex {v} has a negative color")
    return out


def verify_coloring(g: SimpleGraph, lists: Mapping[int, Iterable[int]], c: Mapping[int, int]) -> bool:
    """True iff ``c`` is proper on ``g`` and every color comes from its vertex's list."""
    missing = [v for v in g.vertices if v not in c]
    if missing:
        raise InvalidInput(f"coloring misses vertices {missing[:5]}")
    if any(c[u] == c[v] for u, v in g.edges):
        return False
    return all(v in lists and c[v] in set(lists[v]) for v in g.vertices)


def merged_list(lists: Mapping[int, Iterable[int]], q: Iterable[int]) -> frozenset[int]:
    return frozenset().union(*(frozenset(lists[v]) for v in q))


def clique_list_check(
    g: SimpleGraph, lists: Mapping[int, Iterable[int]], q: Iterable[int]
) -> tuple[frozenset[int], int] | None:
    """``None`` when the clique ``q`` passes, else ``(q, |L(q)|)`` with ``|L(q)| < |q|``.

    A violation means the graph has no proper coloring from these lists.
    """
    q = frozenset(q)
    if not g.is_clique(q):
        raise InvalidInput(f"{sorted(q)} is not a clique")
    size = len(merged_list(lists, q))
    return (q, size) if size < len(q) else None


def _require_cliques(g: SimpleGraph, x_set: frozenset[int], y_set: frozenset[int]) -> None:
    if x_set & y_set:
        raise InvalidInput("X and Y must be disjoint")
    if not (g.is_clique(x_set) and g.is_clique(y_set)):
        raise InvalidInput("X and Y must each induce a clique")


def _cross_complement(g: SimpleGraph, x_set: frozenset[int], y_set: frozenset[int]) -> tuple[SimpleGraph, tuple[int, ...], tuple[int, ...]]:
    """Bipartite graph of non-adjacent cross pairs on local indices (X first)."""
    xs, ys = tuple(sorted(x_set)), tuple(sorted(y_set))
    edges = frozenset(
        (i, len(xs) + j)
        for i, x in enumerate(xs)
        for j, y in enumerate(ys)
        if not g.has_edge(x, y)
    )
    return SimpleGraph(len(xs) + len(ys), edges), xs, ys


def cobipartite_clique_number(
    x_set: Iterable[int], y_set: Iterable[int], g: SimpleGraph
) -> tuple[int, int]:
    """``(omega', mu)`` of ``G[X u Y]``: ``omega' = |X| + |Y| - mu``.

    ``mu`` is the matching number of the bipartite complement (the
    non-adjacent cross pairs); a maximum independent set there is a maximum
    clique of the cobipartite graph.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    _require_cliques(g, x_set, y_set)
    comp, xs, _ = _cross_complement(g, x_set, y_set)
    left = range(len(xs))
    mu = len(max_matching_bipartite(comp, (left, range(len(xs), comp.n))))
    return len(x_set) + len(y_set) - mu, mu


def restrict_lists(
    lists: Mapping[int, Iterable[int]],
    c: Mapping[int, int],
    x_set: Iterable[int],
    y_set: Iterable[int],
    n_x: Iterable[int],
    n_y: Iterable[int],
) -> ListAssignment:
    """``L'(x) = L(x) - c(N_X)`` on ``X`` and ``L'(y) = L(y) - c(N_Y)`` on ``Y``."""
    used_x = frozenset(c[v] for v in n_x)
    used_y = frozenset(c[v] for v in n_y)
    out = {x: frozenset(lists[x]) - used_x for x in x_set}
    out.update({y: frozenset(lists[y]) - used_y for y in y_set})
    return out


def tighten_to_matching(
    x_set: Iterable[int], y_set: Iterable[int], g: SimpleGraph
) -> SimpleGraph | None:
    """Add cross edges until the non-adjacent cross pairs form a ``Y``-saturating matching.

    Only non-adjacent pairs are joined, so a proper coloring of the returned
    supergraph is proper on ``g``. ``None`` when no such matching exists.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    _require_cliques(g, x_set, y_set)
    comp, xs, ys = _cross_complement(g, x_set, y_set)
    matching = max_matching_bipartite(comp, (range(len(xs)), range(len(xs), comp.n)))
    if len(matching) < len(ys):
        return None
    keep = {(xs[i], ys[j - len(xs)]) for i, j in matching}
    added = set()
    for i, j in comp.edges:
        x, y = xs[i], ys[j - len(xs)]
        if (x, y) not in keep:
            added.add((min(x, y), max(x, y)))
    return SimpleGraph(g.n, g.edges | frozenset(added))


def _backtrack(
    g: SimpleGraph,
    vertices: Iterable[int],
    lists: Mapping[int, Iterable[int]],
    fixed: Mapping[int, int] | None = None,
) -> Coloring | None:
    """Color ``vertices`` from ``lists`` consistently with ``fixed``; ``None`` on exhaustion.

    Most-constrained vertex first, lowest color first.
    """
    color = dict(fixed or {})
    todo = set(vertices) - set(color)
    lists = {v: frozenset(lists[v]) for v in todo}

    def available(v: int) -> list[int]:
        taken = {color[u] for u in g.adj[v] if u in color}
        return sorted(lists[v] - taken)

    def step() -> bool:
        if not todo:
            return True
        v = min(todo, key=lambda u: (len(available(u)), u))
        todo.discard(v)
        for col in available(v):
            color[v] = col
            if step():
                return True
        color.pop(v, None)
        todo.add(v)
        return False

    if not step():
        return None
    return {v: color[v] for v in vertices}


def color_matching_cobipartite(
    h_graph: SimpleGraph,
    x_set: Iterable[int],
    y_set: Iterable[int],
    lists: Mapping[int, Iterable[int]],
) -> Coloring:
    """Color ``X u Y`` when its cross non-edges are a matching of size ``|Y|``.

    Needs ``|X| >= |Y|``, ``|L(x)| >= |X|`` and ``|L(y)| >= |Y|``; under these
    conditions a coloring always exists.
    """
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    _require_cliques(h_graph, x_set, y_set)
    if len(x_set) < len(y_set):
        raise InvalidInput("need |X| >= |Y|")
    missing = [(x, y) for x in sorted(x_set) for y in sorted(y_set) if not h_graph.has_edge(x, y)]
    if len(missing) != len(y_set) or len({x for x, _ in missing}) != len(missing) or {
        y for _, y in missing
    } != y_set:
        raise InvalidInput("cross non-edges must form a matching saturating Y")
    if any(len(set(lists[x])) < len(x_set) for x in x_set):
        raise InvalidInput("lists on X shorter than |X|")
    if any(len(set(lists[y])) < len(y_set) for y in y_set):
        raise InvalidInput("lists on Y shorter than |Y|")
    sub, index = induced_subgraph(h_graph, x_set | y_set)
    local = {i: lists[v] for i, v in enumerate(index)}
    found = _backtrack(sub, range(sub.n), local)
    if found is None:
        raise CertificateError(
            "internal",
            "matching cobipartite instance not colorable",
            {"x": sorted(x_set), "y": sorted(y_set), "lists": _lists_doc(lists, x_set | y_set)},
        )
    return {index[i]: col for i, col in found.items()}


def choose_blocking_pair(
    x_set: Iterable[int],
    y_set: Iterable[int],
    g_sub: SimpleGraph,
    lists: Mapping[int, Iterable[int]] | None = None,
) -> tuple[int, int] | None:
    """Least adjacent cross pair ``(x1, y1)`` lying in every maximum clique of ``G[X u Y]``."""
    x_set, y_set = frozenset(x_set), frozenset(y_set)
    sub, index = induced_subgraph(g_sub, x_set | y_set)
    tops = [frozenset(index[i] for i in q) for q in maximum_cliques(sub)]
    for x in sorted(x_set):
        for y in sorted(y_set):
            if g_sub.has_edge(x, y) and all(x in q and y in q for q in tops):
                return x, y
    return None


@dataclass(frozen=True)
class BlockingCertificate:
    """Obstruction met while extending a coloring over an augment."""

    clique: frozenset[int]
    merged_list_size: int
    pair: tuple[int, int]
    overlap: int
    x_free: int
    y_free: int
    forbidden_x: frozenset[int]
    forbidden_y: frozenset[int]
    lemma2_violation: bool

    def to_document(self) -> dict[str, Any]:
        return {
            "clique": sorted(self.clique),
            "merged_list_size": self.merged_list_size,
            "pair": list(self.pair),
            "overlap": self.overlap,
            "x_free": self.x_free,
            "y_free": self.y_free,
            "forbidden_x": sorted(self.forbidden_x),
            "forbidden_y": sorted(self.forbidden_y),
            "lemma2_violation": self.lemma2_violation,
        }


@dataclass
class EngineStats:
    """Counters accumulated over engine calls."""

    calls: int = 0
    cases: Counter = field(default_factory=Counter)
    recolor_rounds: int = 0
    loop_lengths: list[int] = field(default_factory=list)
    repeats: int = 0
    no_pair: int = 0
    local_fallbacks: int = 0
    global_fallbacks: int = 0
    certificates: list[dict[str, Any]] = field(default_factory=list)

    def summary(self) -> dict[str, Any]:
        return {
            "calls": self.calls,
            "cases": dict(sorted(self.cases.items())),
            "recolor_rounds": self.recolor_rounds,
            "max_loop_length": max(self.loop_lengths, default=0),
            "repeats": self.repeats,
            "no_pair": self.no_pair,
            "local_fallbacks": self.local_fallbacks,
            "global_fallbacks": self.global_fallbacks,
            "certificates": len(self.certificates),
        }


@lru_cache(maxsize=4096)
def _realized(p: aug.ElementaryPresentation) -> tuple[SimpleGraph, aug.AugmentLocator, int]:
    g, loc = aug.realize(p)
    return g, loc, clique_number(g)


@lru_cache(maxsize=4096)
def _without_last(p: aug.ElementaryPresentation):
    return aug.without_last_augment(p)


def _lists_doc(lists: Mapping[int, Iterable[int]], vs: Iterable[int]) -> dict[str, list[int]]:
    return {str(v): sorted(lists[v]) for v in sorted(vs)}


class _Engine:
    def __init__(self, stats: EngineStats):
        self.stats = stats

    def color(self, p: aug.ElementaryPresentation, lists: ListAssignment) -> Coloring:
        g, loc, _ = _realized(p)
        if p.h == 0:
            self.stats.cases["base"] += 1
            if p.b.m == 0:
                return {}
            edge_lists = {e: lists[v] for e, v in loc.edge_vertex.items()}
            return {loc.edge_vertex[e]: col for e, col in list_edge_color(p.b, edge_lists).items()}
        sub, to_g = _without_last(p)
        c_sub = self.color(sub, {v: lists[to_g[v]] for v in range(len(to_g))})
        c = {to_g[v]: col for v, col in c_sub.items()}
        return self.extend(p, lists, c)

    def extend(self, p: aug.ElementaryPresentation, lists: ListAssignment, c: Coloring) -> Coloring:
        g, loc, omega = _realized(p)
        block = loc.blocks[-1]
        n_x, n_y = aug.outer_neighborhoods(g, block)
        x_set, y_set = frozenset(block.x_vertices), frozenset(block.y_vertices)
        swapped = len(y_set) > len(x_set)
        if swapped:
            x_set, y_set, n_x, n_y = y_set, x_set, n_y, n_x
        k1, k2 = len(x_set), len(y_set)
        budget = k1 * k2
        seen: set[tuple] = set()
        rounds = 0
        while True:
            lp = restrict_lists(lists, c, x_set, y_set, n_x, n_y)
            found = self.color_augment(g, x_set, y_set, lp, omega)
            if found is not None:
                self.stats.loop_lengths.append(rounds)
                return {**c, **found}
            if rounds >= budget:
                break
            cert = self.certificate(g, x_set, y_set, lists, lp, c, n_x, n_y)
            if cert is None:
                self.stats.no_pair += 1
                break
            pattern = (cert.pair, cert.forbidden_x, cert.forbidden_y)
            if pattern in seen:
                self.stats.repeats += 1
                log.debug("obstruction pattern repeated after %d rounds: %s", rounds, cert)
                break
            seen.add(pattern)
            _, mu = cobipartite_clique_number(x_set, y_set, g)
            if mu >= k2:
                raise CertificateError(
                    "internal",
                    f"augment not colorable although mu={mu} >= k2={k2}",
                    {"blocking": cert.to_document()},
                )
            star = aug.gstar_with_map(p, (k1, k2, mu))
            g_star, _, omega_star = _realized(star.presentation)
            if omega_star > omega:
                raise CertificateError(
                    "internal", f"clique number grew from {omega} to {omega_star} in G*"
                )
            big, small = (star.y_star, star.x_star) if swapped else (star.x_star, star.y_star)
            x1, y1 = cert.pair
            l_star = {v: lists[u] for v, u in star.carried.items()}
            l_star.update({v: lists[x1] for v in big})
            l_star.update({v: lists[y1] for v in small})
            c_star = self.color(star.presentation, l_star)
            c = {star.carried[v]: col for v, col in c_star.items() if v in star.carried}
            rounds += 1
            self.stats.recolor_rounds += 1
            log.debug("recolor round %d via pair %s (mu=%d)", rounds, cert.pair, mu)
        self.stats.loop_lengths.append(rounds)
        return self.fallback(g, lists, c, x_set | y_set | n_x | n_y, x_set | y_set)

    def color_augment(
        self,
        g: SimpleGraph,
        x_set: frozenset[int],
        y_set: frozenset[int],
        lp: ListAssignment,
        omega: int,
    ) -> Coloring | None:
        if len(x_set) + len(y_set) <= omega:
            self.stats.cases["small"] += 1
            return _backtrack(g, x_set | y_set, lp)
        if len(x_set) == omega:
            self.stats.cases["case1"] += 1
            sup = tighten_to_matching(x_set, y_set, g)
            if sup is None:
                raise CertificateError(
                    "internal",
                    "no Y-saturating non-edge matching although |X| = omega",
                    {"x": sorted(x_set), "y": sorted(y_set)},
                )
            return color_matching_cobipartite(sup, x_set, y_set, lp)
        self.stats.cases["case2"] += 1
        return _backtrack(g, x_set | y_set, lp)

    def certificate(
        self,
        g: SimpleGraph,
        x_set: frozenset[int],
        y_set: frozenset[int],
        lists: ListAssignment,
        lp: ListAssignment,
        c: Coloring,
        n_x: frozenset[int],
        n_y: frozenset[int],
    ) -> BlockingCertificate | None:
        pair = choose_blocking_pair(x_set, y_set, g, lp)
        if pair is None:
            return None
        sub, index = induced_subgraph(g, x_set | y_set)
        tops = [frozenset(index[i] for i in q) for q in maximum_cliques(sub)]
        violation = _lemma2_violation(sub, index, lp)
        if violation is not None:
            clique = next((q for q in tops if violation <= q), violation)
        else:
            clique = tops[0]
        x1, y1 = pair
        forbidden_x = frozenset(lists[x1]) & frozenset(c[v] for v in n_x)
        forbidden_y = frozenset(lists[y1]) & frozenset(c[v] for v in n_y)
        return BlockingCertificate(
            clique=clique,
            merged_list_size=len(merged_list(lp, clique)),
            pair=pair,
            overlap=len(frozenset(lists[x1]) & frozenset(lists[y1])),
            x_free=len(frozenset(lists[x1]) - forbidden_x),
            y_free=len(frozenset(lists[y1]) - forbidden_y),
            forbidden_x=forbidden_x,
            forbidden_y=forbidden_y,
            lemma2_violation=violation is not None,
        )

    def fallback(
        self,
        g: SimpleGraph,
        lists: ListAssignment,
        c: Coloring,
        region: frozenset[int],
        augment: frozenset[int],
    ) -> Coloring:
        fixed = {v: col for v, col in c.items() if v not in region}
        found = _backtrack(g, region, lists, fixed)
        if found is not None:
            self.stats.local_fallbacks += 1
            return {**fixed, **found}
        found = _backtrack(g, g.vertices, lists)
        if found is not None:
            self.stats.global_fallbacks += 1
            return found
        data = {"augment": sorted(augment), "lists": _lists_doc(lists, g.vertices)}
        self.stats.certificates.append(data)
        raise CertificateError(
            "theorem-counterexample", "no coloring from the given lists exists", data
        )


def _lemma2_violation(
    sub: SimpleGraph, index: tuple[int, ...], lp: Mapping[int, Iterable[int]]
) -> frozenset[int] | None:
    """Smallest clique ``Q`` of ``sub`` with ``|L'(Q)| < |Q|``, in original labels."""
    seen: set[frozenset[int]] = set()
    for q in maximal_cliques(sub):
        for r in range(1, len(q) + 1):
            for part in combinations(sorted(q), r):
                fs = frozenset(index[i] for i in part)
                if fs in seen:
                    continue
                seen.add(fs)
    for fs in sorted(seen, key=lambda s: (len(s), sorted(s))):
        if len(merged_list(lp, fs)) < len(fs):
            return fs
    return None


def list_color_elementary(
    p: aug.ElementaryPresentation,
    lists: Mapping[int, Iterable[int]],
    stats: EngineStats | None = None,
) -> Coloring:
    """Proper coloring of ``realize(p)`` with every vertex colored from its list.

    Every list must hold at least ``omega`` colors, ``omega`` being the clique
    number of the realization.
    """
    g, _, omega = _realized(p)
    lists = as_lists(lists)
    missing = [v for v in g.vertices if v not in lists]
    if missing:
        raise InvalidInput(f"no list for vertices {missing[:5]}")
    short = [v for v in g.vertices if len(lists[v]) < omega]
    if short:
        raise InvalidInput(f"lists of vertices {short[:5]} are shorter than omega={omega}")
    stats = stats if stats is not None else EngineStats()
    stats.calls += 1
    c = _Engine(stats).color(p, lists)
    if not verify_coloring(g, lists, c):
        raise CertificateError("internal", "engine produced an invalid coloring")
    return c


def omega_of(p: aug.ElementaryPresentation) -> int:
    return _realized(p)[2]
