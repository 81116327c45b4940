"""Brute-force ground truth, kept independent of the constructive code paths.

Nothing here calls the Gallai recognizer, the kernel method or the engine.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Any, Iterable, Mapping

import numpy as np

from .errors import InvalidInput
from .graph_core import SimpleGraph, induced_subgraph, max_clique_desk

EXHAUSTIVE = "exhaustive"
SAMPLED = "sampled"


def _guard(g: SimpleGraph, limit: int, what: str) -> None:
    if g.n > limit:
        raise InvalidInput(f"{what} limited to n <= {limit}, got n={g.n}")


def _search_order(g: SimpleGraph) -> list[int]:
    """BFS order from high-degree roots, so each vertex tends to meet colored neighbours."""
    order: list[int] = []
    seen: set[int] = set()
    for root in sorted(g.vertices, key=lambda v: (-g.degree(v), v)):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for w in sorted(g.adj[u], key=lambda v: (-g.degree(v), v)):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _k_colorable(g: SimpleGraph, k: int) -> bool:
    order = _search_order(g)
    color = [-1] * g.n

    def go(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {color[u] for u in g.adj[v]}
        for c in range(min(used + 1, k)):
            if c not in taken:
                color[v] = c
                if go(i + 1, max(used, c + 1)):
                    return True
        color[v] = -1
        return False

    return go(0, 0)


def chromatic_number_exact(g: SimpleGraph, max_n: int = 20) -> int:
    """Least ``k`` admitting a proper ``k``-coloring, by trying ``k = 0, 1, 2, ...``."""
    _guard(g, max_n, "chromatic_number_exact")
    k = 0
    while not _k_colorable(g, k):
        k += 1
    return k


def is_list_colorable_exact(
    g: SimpleGraph, lists: Mapping[int, Iterable[int]], max_n: int = 20
) -> dict[int, int] | None:
    """A proper coloring from ``lists``, or ``None`` after exhausting every choice."""
    _guard(g, max_n, "is_list_colorable_exact")
    order = _search_order(g)
    options = {v: sorted(set(lists[v])) for v in g.vertices}
    color: dict[int, int] = {}

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {color[u] for u in g.adj[v] if u in color}
        for c in options[v]:
            if c not in taken:
                color[v] = c
                if go(i + 1):
                    return True
                del color[v]
        return False

    if not go(0):
        return None
    assert all(color[u] != color[v] for u, v in g.edges)
    return dict(sorted(color.items()))


@dataclass(frozen=True)
class ChoosabilityVerdict:
    """Result of a bounded choosability probe.

    ``holds`` means no uncolorable ``k``-list assignment was found among the
    examined ones (every assignment over the universe in exhaustive mode);
    it is never a claim beyond that universe.
    """

    mode: str
    k: int
    universe_size: int
    trials: int
    holds: bool
    counterexample: dict[int, tuple[int, ...]] | None = None
    seed: int | None = None

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "mode": self.mode,
            "k": self.k,
            "universe_size": self.universe_size,
            "trials": self.trials,
            "result": "holds" if self.holds else "counterexample",
        }
        if self.seed is not None:
            doc["seed"] = self.seed
        if self.counterexample is not None:
            doc["counterexample"] = {
                "lists": {str(v): list(cs) for v, cs in sorted(self.counterexample.items())}
            }
        return doc


def _peel_low_degree(g: SimpleGraph, k: int) -> list[int]:
    """Vertices surviving repeated deletion of vertices with degree < k.

    Such a vertex can always be colored last, so deleting it does not change
    k-choosability.
    """
    alive = set(g.vertices)
    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if len(g.adj[v] & alive) < k:
                alive.discard(v)
                changed = True
    return sorted(alive)


def _components(g: SimpleGraph) -> list[list[int]]:
    seen: set[int] = set()
    out = []
    for v in g.vertices:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _exhaustive_component(h: SimpleGraph, k: int, universe: int) -> tuple[dict[int, tuple[int, ...]] | None, int]:
    """Search all k-list assignments of ``h`` up to color renaming.

    Colors are introduced in order of first appearance, so the lists of each
    vertex are a subset of the colors already seen plus the next fresh ones.
    The sweep carries the set of proper partial colorings projected onto the
    vertices that still have uncolored neighbours.
    """
    order = _search_order(h)
    pos = {v: i for i, v in enumerate(order)}
    back = [[pos[u] for u in h.adj[v] if pos[u] < i] for i, v in enumerate(order)]
    last_need = [max((pos[u] for u in h.adj[v]), default=-1) for v in order]
    frontier = [tuple(j for j in range(i + 1) if last_need[j] > i) for i in range(len(order))]
    holds_memo: set[tuple] = set()
    chosen: list[tuple[int, ...]] = []
    leaves = 0

    def options(used: int):
        for fresh in range(0, k + 1):
            if used + fresh > universe:
                break
            new = tuple(range(used, used + fresh))
            for old in combinations(range(used), k - fresh):
                yield old + new, used + fresh

    def go(i: int, states: frozenset, used: int) -> bool:
        nonlocal leaves
        if i == len(order):
            leaves += 1
            return True
        key = (i, states, used)
        if key in holds_memo:
            return True
        prev = frontier[i - 1] if i else ()
        where = {j: t for t, j in enumerate(prev)}
        for lst, used2 in options(used):
            nxt = set()
            for st in states:
                taken = {st[where[j]] for j in back[i]}
                for c in lst:
                    if c not in taken:
                        full = dict(zip(prev, st))
                        full[i] = c
                        nxt.add(tuple(full[j] for j in frontier[i]))
            chosen.append(lst)
            if not nxt or not go(i + 1, frozenset(nxt), used2):
                return False
            chosen.pop()
        holds_memo.add(key)
        return True

    if go(0, frozenset({()}), 0):
        return None, leaves
    lists = {order[i]: chosen[i] for i in range(len(chosen))}
    for v in order[len(chosen):]:
        lists[v] = tuple(range(k))
    return lists, leaves


def _sampled_trial(args: tuple[SimpleGraph, int, int, int, int]) -> dict[int, tuple[int, ...]] | None:
    g, k, universe, seed, i = args
    rng = np.random.default_rng([seed, i])
    lists = {v: tuple(sorted(int(c) for c in rng.choice(universe, size=k, replace=False))) for v in g.vertices}
    return None if is_list_colorable_exact(g, lists) is not None else lists


def choosability_check(
    g: SimpleGraph,
    k: int,
    universe_size: int | None = None,
    mode: str = EXHAUSTIVE,
    trials: int = 1000,
    seed: int = 0,
    budget: int = 10**7,
    jobs: int = 1,
    reduce: bool = True,
) -> ChoosabilityVerdict:
    """Probe whether ``g`` is ``k``-choosable over the colors ``0..universe_size-1``.

    The exhaustive mode covers every assignment (its raw count
    ``C(U, k) ** n`` must not exceed ``budget``); the sampled mode draws
    ``trials`` assignments, trial ``i`` from a generator seeded by
    ``(seed, i)``. With ``reduce`` the exhaustive mode first deletes
    vertices of degree below ``k`` and treats components separately, which
    leaves the verdict unchanged.
    """
    universe = k + 2 if universe_size is None else universe_size
    if k < 1 or universe < k:
        raise InvalidInput(f"need 1 <= k <= universe, got k={k}, universe={universe}")
    if mode == EXHAUSTIVE:
        raw = comb(universe, k) ** g.n
        if raw > budget:
            raise InvalidInput(f"exhaustive search over {raw} assignments exceeds budget {budget}")
        core = _peel_low_degree(g, k) if reduce else list(g.vertices)
        sub, index = induced_subgraph(g, core)
        examined = 0
        for comp in _components(sub) if reduce else [list(sub.vertices)]:
            h, local = induced_subgraph(sub, comp)
            found, leaves = _exhaustive_component(h, k, universe)
            examined += leaves
            if found is not None:
                lists = {v: tuple(range(k)) for v in g.vertices}
                lists.update({index[local[v]]: cs for v, cs in found.items()})
                if is_list_colorable_exact(g, lists) is not None:
                    raise AssertionError("exhaustive search produced a colorable counterexample")
                return ChoosabilityVerdict(mode, k, universe, examined, False, lists)
        return ChoosabilityVerdict(mode, k, universe, examined, True)
    if mode != SAMPLED:
        raise InvalidInput(f"unknown mode {mode!r}")
    work = [(g, k, universe, seed, i) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sampled_trial, work, chunksize=max(1, trials // (4 * jobs))))
    else:
        results = []
        for item in work:
            results.append(_sampled_trial(item))
            if results[-1] is not None:
                break
    for i, lists in enumerate(results):
        if lists is not None:
            return ChoosabilityVerdict(mode, k, universe, i + 1, False, lists, seed)
    return ChoosabilityVerdict(mode, k, universe, trials, True, None, seed)


def _induced_p3_pairs(g: SimpleGraph, edges: list[tuple[int, int]]) -> list[tuple[int, int]]:
    index = {e: i for i, e in enumerate(edges)}
    pairs = []
    for a, c in combinations(range(g.n), 2):
        if g.has_edge(a, c):
            continue
        for b in range(g.n):
            if g.has_edge(a, b) and g.has_edge(b, c):
                i = index[(min(a, b), max(a, b))]
                j = index[(min(b, c), max(b, c))]
                pairs.append((min(i, j), max(i, j)))
    return pairs


def elementary_bruteforce(g: SimpleGraph, max_edges: int = 20) -> dict[tuple[int, int], str] | None:
    """A two-tagging of the edges separating every induced P3, or ``None``.

    Walks the tree of all ``2 ** |E|`` taggings edge by edge, abandoning a
    branch as soon as some induced P3 with both edges tagged is monochromatic.
    """
    edges = sorted(g.edges)
    if len(edges) > max_edges:
        raise InvalidInput(f"elementary_bruteforce limited to {max_edges} edges")
    earlier: list[list[int]] = [[] for _ in edges]
    for i, j in _induced_p3_pairs(g, edges):
        earlier[j].append(i)
    tag = [0] * len(edges)

    def go(j: int) -> bool:
        if j == len(edges):
            return True
        for t in (0, 1):
            if all(tag[i] != t for i in earlier[j]):
                tag[j] = t
                if go(j + 1):
                    return True
        return False

    if not go(0):
        return None
    return {e: ("pink" if tag[i] == 0 else "green") for i, e in enumerate(edges)}


def perfectness_desk(g: SimpleGraph, max_n: int = 10) -> bool:
    """True iff every induced subgraph has chromatic number equal to clique number."""
    _guard(g, max_n, "perfectness_desk")
    for r in range(1, g.n + 1):
        for s in combinations(range(g.n), r):
            h, _ = induced_subgraph(g, s)
            if not _k_colorable(h, len(max_clique_desk(h))):
                return False
    return True


def has_induced_claw(g: SimpleGraph) -> bool:
    for v in g.vertices:
        for a, b, c in combinations(sorted(g.adj[v]), 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return True
    return False
