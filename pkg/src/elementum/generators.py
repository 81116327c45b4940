"""Seeded constructions: random root multigraphs and presentations, peculiar graphs, named graphs."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .augmentation import (
    CobipartiteAugment,
    ElementaryPresentation,
    flat_edges_of,
)
from .errors import InvalidInput
from .graph_core import BipartiteMultigraph, SimpleGraph, complement

MATCHING = "matching"
GENERAL = "general"


def random_bipartite_multigraph(
    left: int, right: int, m: int, max_multiplicity: int, seed: int
) -> BipartiteMultigraph:
    """``m`` edges, each drawn uniformly among pairs still below the multiplicity cap."""
    if min(left, right, m, max_multiplicity) < 1:
        raise InvalidInput("all parameters must be positive")
    if m > left * right * max_multiplicity:
        raise InvalidInput(f"cannot place {m} edges with multiplicity cap {max_multiplicity}")
    rng = np.random.default_rng(seed)
    count: dict[tuple[int, int], int] = {}
    pairs = [(l, r) for l in range(left) for r in range(right)]
    edges = []
    for _ in range(m):
        open_pairs = [pr for pr in pairs if count.get(pr, 0) < max_multiplicity]
        pr = open_pairs[int(rng.integers(len(open_pairs)))]
        count[pr] = count.get(pr, 0) + 1
        edges.append(pr)
    return BipartiteMultigraph(left, right, tuple(edges))


def greedy_flat_edges(b: BipartiteMultigraph) -> list[tuple[int, int]]:
    """Pairwise non-incident flat edges of ``L(b)``, picked greedily in lexicographic order."""
    if b.m == 0:
        return []
    chosen, used = [], set()
    for i, j in flat_edges_of(b):
        if i not in used and j not in used:
            chosen.append((i, j))
            used.update((i, j))
    return chosen


def random_augment(
    rng: np.random.Generator, x_size: int, y_size: int, shape: str
) -> CobipartiteAugment:
    pairs = [(a, c) for a in range(x_size) for c in range(y_size)]
    if shape == MATCHING:
        if max(x_size, y_size) < 2:
            raise InvalidInput("matching-shaped augment needs a side of size >= 2")
        if x_size >= y_size:
            hit = rng.permutation(x_size)[:y_size]
            missing = {(int(hit[c]), c) for c in range(y_size)}
        else:
            hit = rng.permutation(y_size)[:x_size]
            missing = {(a, int(hit[a])) for a in range(x_size)}
        return CobipartiteAugment(x_size, y_size, frozenset(pr for pr in pairs if pr not in missing))
    if shape != GENERAL:
        raise InvalidInput(f"unknown augment shape {shape!r}")
    if len(pairs) < 2:
        raise InvalidInput("augment with one cross pair cannot avoid being a clique")
    keep = [pr for pr, bit in zip(pairs, rng.integers(0, 2, size=len(pairs))) if bit]
    if not keep:
        keep = [pairs[int(rng.integers(len(pairs)))]]
    elif len(keep) == len(pairs):
        keep.pop(int(rng.integers(len(keep))))
    return CobipartiteAugment(x_size, y_size, frozenset(keep))


def random_presentation(
    b: BipartiteMultigraph,
    h: int,
    seed: int,
    augment_shape: str = GENERAL,
    max_side: int = 3,
    sizes: Sequence[tuple[int, int]] | None = None,
) -> ElementaryPresentation:
    """Augment the first ``h`` greedy flat edges of ``L(b)`` with random cobipartite graphs.

    Side sizes are drawn from ``1..max_side`` (rejecting ``1 x 1``, which
    cannot be a legal augment) unless ``sizes`` fixes them.
    """
    flats = greedy_flat_edges(b)
    if len(flats) < h:
        raise InvalidInput(f"only {len(flats)} pairwise non-incident flat edges, {h} requested")
    if sizes is not None and len(sizes) != h:
        raise InvalidInput("one size pair per augment required")
    rng = np.random.default_rng(seed)
    augments = []
    for i in range(h):
        if sizes is not None:
            kx, ky = sizes[i]
        else:
            while True:
                kx, ky = (int(v) for v in rng.integers(1, max_side + 1, size=2))
                if kx + ky >= 3:
                    break
        augments.append(random_augment(rng, kx, ky, augment_shape))
    return ElementaryPresentation(b, tuple(flats[:h]), tuple(augments))


@dataclass(frozen=True)
class PeculiarSpec:
    """Sizes of ``A1, B1, A2, B2, A3, B3`` and ``Q1, Q2, Q3``.

    ``removed[i]`` lists pairs ``(a, b)``: the ``a``-th vertex of ``A_{i+1}``
    and the ``b``-th vertex of ``B_{i+2}`` (indices of the parts mod 3) lose
    their edge.
    """

    a_sizes: tuple[int, int, int]
    b_sizes: tuple[int, int, int]
    q_sizes: tuple[int, int, int]
    removed: tuple[frozenset[tuple[int, int]], ...]

    def __post_init__(self) -> None:
        if min(*self.a_sizes, *self.b_sizes, *self.q_sizes) < 1:
            raise InvalidInput("every part of a peculiar graph must be nonempty")
        if len(self.removed) != 3:
            raise InvalidInput("removed pairs must be given for each i = 1, 2, 3")
        for i, pairs in enumerate(self.removed):
            if not pairs:
                raise InvalidInput(f"at least one A{i + 1}-B{(i + 1) % 3 + 1} edge must be removed")
            for a, bb in pairs:
                if not (0 <= a < self.a_sizes[i] and 0 <= bb < self.b_sizes[(i + 1) % 3]):
                    raise InvalidInput(f"removed pair {(a, bb)} out of range")

    @classmethod
    def smallest(cls) -> PeculiarSpec:
        """All parts single vertices, one removed edge per i."""
        one = frozenset({(0, 0)})
        return cls((1, 1, 1), (1, 1, 1), (1, 1, 1), (one, one, one))


def peculiar_graph(spec: PeculiarSpec) -> SimpleGraph:
    """Vertices ordered ``A1, B1, A2, B2, A3, B3, Q1, Q2, Q3``."""
    parts: dict[tuple[str, int], list[int]] = {}
    nxt = 0
    for i in range(3):
        for name, size in (("A", spec.a_sizes[i]), ("B", spec.b_sizes[i])):
            parts[(name, i)] = list(range(nxt, nxt + size))
            nxt += size
    core = nxt
    for i in range(3):
        parts[("Q", i)] = list(range(nxt, nxt + spec.q_sizes[i]))
        nxt += spec.q_sizes[i]
    edges = set(combinations(range(core), 2))
    for i, pairs in enumerate(spec.removed):
        for a, bb in pairs:
            u, v = parts[("A", i)][a], parts[("B", (i + 1) % 3)][bb]
            edges.discard((min(u, v), max(u, v)))
    for i in range(3):
        q = parts[("Q", i)]
        edges.update(combinations(q, 2))
        own = set(parts[("A", i)]) | set(parts[("B", i)])
        edges.update((w, u) for u in q for w in range(core) if w not in own)
    return SimpleGraph(nxt, frozenset(edges))


def _cycle(n: int) -> SimpleGraph:
    return SimpleGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def named_graph(name: str) -> SimpleGraph:
    """``claw``, ``p3``, ``c<n>``, ``c<n>_complement``, ``k<n>`` or ``k_n(<n>)``."""
    key = name.strip().lower()
    if key == "claw":
        return SimpleGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    if key == "p3":
        return SimpleGraph.from_edges(3, [(0, 1), (1, 2)])
    m = re.fullmatch(r"c(\d+)(_complement)?", key)
    if m and int(m.group(1)) >= 3:
        g = _cycle(int(m.group(1)))
        return complement(g) if m.group(2) else g
    m = re.fullmatch(r"k_?n?\(?(\d+)\)?", key)
    if m:
        n = int(m.group(1))
        return SimpleGraph(n, frozenset(combinations(range(n), 2)))
    raise InvalidInput(f"unknown graph name {name!r}")


def presentation_corpus(
    count: int,
    seed: int,
    *,
    max_left: int = 5,
    max_right: int = 5,
    max_m: int = 10,
    max_h: int = 3,
    max_n: int = 18,
    max_omega: int | None = None,
    max_side: int = 3,
    shapes: Sequence[str] = (GENERAL, MATCHING),
) -> list[ElementaryPresentation]:
    """Deterministic batch of random presentations within the given bounds.

    Slot ``i`` targets ``h = i mod (max_h + 1)`` augments and cycles through
    ``shapes``; candidates violating a bound are redrawn.
    """
    from .augmentation import presentation_vertices, realize
    from .graph_core import clique_number

    rng = np.random.default_rng(seed)
    out: list[ElementaryPresentation] = []
    for slot in range(count):
        h = slot % (max_h + 1)
        shape = shapes[slot % len(shapes)]
        for _ in range(20000):
            left = int(rng.integers(1, max_left + 1))
            right = int(rng.integers(1, max_right + 1))
            cap = int(rng.integers(1, 3))
            m = int(rng.integers(max(1, 2 * h), max_m + 1)) if 2 * h <= max_m else 0
            if m == 0 or m > left * right * cap:
                continue
            sub_seed = int(rng.integers(2**32))
            b = random_bipartite_multigraph(left, right, m, cap, sub_seed)
            try:
                p = random_presentation(b, h, sub_seed, shape, max_side)
            except InvalidInput:
                continue
            if presentation_vertices(p) > max_n:
                continue
            if max_omega is not None and clique_number(realize(p)[0]) > max_omega:
                continue
            out.append(p)
            break
        else:
            raise InvalidInput(f"no presentation with h={h} found within the bounds")
    return out
