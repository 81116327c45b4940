"""List edge coloring of bipartite multigraphs by the kernel method.

A proper Delta-edge-coloring orients the line graph so that every induced
subdigraph has a kernel; the kernels are found as stable matchings. Coloring
one kernel per list color then succeeds whenever every list has at least
Delta colors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CertificateError, InvalidInput
from .graph_core import BipartiteMultigraph

ProperEdgeColoring = dict[int, int]


def koenig_edge_coloring(b: BipartiteMultigraph) -> ProperEdgeColoring:
    """Proper edge coloring with colors ``1..Delta`` (Koenig's theorem).

    Edges are inserted one at a time; when the free colors at the two ends
    differ, an alternating two-colored path is flipped first.
    """
    if b.m == 0:
        raise InvalidInput("edge coloring of a multigraph without edges")
    delta = b.max_degree()
    color: dict[int, int] = {}
    # at[vertex][c] = edge; left vertices keyed ("L", l), right ("R", r)
    at: dict[tuple[str, int], dict[int, int]] = {}

    def ends(e: int) -> tuple[tuple[str, int], tuple[str, int]]:
        l, r = b.edges[e]
        return ("L", l), ("R", r)

    def free(v: tuple[str, int]) -> int:
        used = at.get(v, {})
        return next(c for c in range(1, delta + 1) if c not in used)

    for e in range(b.m):
        u, w = ends(e)
        a, bb = free(u), free(w)
        if a in at.get(w, {}):
            # flip the a/bb path leaving w along its a-edge; it cannot reach u
            path: list[int] = []
            cur, want = w, a
            while want in at.get(cur, {}):
                f = at[cur][want]
                path.append(f)
                p, q = ends(f)
                cur = q if p == cur else p
                want = bb if want == a else a
            for f in path:
                for v in ends(f):
                    del at[v][color[f]]
            for f in path:
                color[f] = bb if color[f] == a else a
                for v in ends(f):
                    at.setdefault(v, {})[color[f]] = f
        color[e] = a
        for v in (u, w):
            at.setdefault(v, {})[a] = e
    return color


def is_proper_edge_coloring(b: BipartiteMultigraph, coloring: Mapping[int, int]) -> bool:
    if set(coloring) != set(range(b.m)):
        return False
    seen: set[tuple[str, int, int]] = set()
    for e, (l, r) in enumerate(b.edges):
        c = coloring[e]
        for key in (("L", l, c), ("R", r, c)):
            if key in seen:
                return False
            seen.add(key)
    return True


@dataclass(frozen=True)
class KernelOrientation:
    """Orientation of the line graph of ``b`` induced by a proper edge coloring.

    At a left vertex arcs run from the higher color to the lower; at a right
    vertex from the lower to the higher. Parallel edges meet at both ends and
    so carry arcs in both directions.
    """

    b: BipartiteMultigraph
    base: tuple[int, ...]
    out: tuple[frozenset[int], ...]

    @classmethod
    def from_coloring(cls, b: BipartiteMultigraph, base: Mapping[int, int]) -> KernelOrientation:
        out: list[set[int]] = [set() for _ in range(b.m)]
        for i in range(b.m):
            for j in range(b.m):
                if i == j:
                    continue
                (li, ri), (lj, rj) = b.edges[i], b.edges[j]
                if li == lj and base[i] > base[j]:
                    out[i].add(j)
                if ri == rj and base[i] < base[j]:
                    out[i].add(j)
        return cls(b, tuple(base[e] for e in range(b.m)), tuple(frozenset(s) for s in out))

    def out_degree(self, e: int) -> int:
        return len(self.out[e])


def is_kernel(o: KernelOrientation, s: Iterable[int], k: Iterable[int]) -> bool:
    """``k`` independent in the line graph on ``s`` and absorbing every vertex of ``s - k``."""
    s, k = set(s), set(k)
    if not k <= s:
        return False
    for e in k:
        for f in k:
            if e != f and o.b.shares_endpoint(e, f):
                return False
    return all(o.out[e] & k for e in s - k)


def find_kernel(o: KernelOrientation, s: Iterable[int]) -> frozenset[int]:
    """Kernel of the orientation restricted to ``s``, as a stable matching.

    Left vertices propose along their edges in increasing base color; a right
    vertex keeps the highest-colored proposal. Ties cannot occur because the
    base coloring is proper.
    """
    s = sorted(set(s))
    if not s:
        raise InvalidInput("kernel of an empty vertex set")
    b, base = o.b, o.base
    prefs: dict[int, list[int]] = {}
    for e in s:
        prefs.setdefault(b.edges[e][0], []).append(e)
    for lst in prefs.values():
        lst.sort(key=lambda e: base[e], reverse=True)  # pop() yields lowest color
    held: dict[int, int] = {}
    free_left = sorted(prefs)
    while free_left:
        l = free_left.pop()
        if not prefs[l]:
            continue
        e = prefs[l].pop()
        r = b.edges[e][1]
        cur = held.get(r)
        if cur is None:
            held[r] = e
        elif base[e] > base[cur]:
            held[r] = e
            free_left.append(b.edges[cur][0])
        else:
            free_left.append(l)
    kernel = frozenset(held.values())
    if not is_kernel(o, s, kernel):
        raise CertificateError(
            "internal",
            "stable matching is not a kernel of the orientation",
            {"subset": s, "candidate": sorted(kernel)},
        )
    return kernel


def list_edge_color(
    b: BipartiteMultigraph, lists: Mapping[int, Iterable[int]]
) -> dict[int, int]:
    """Color every edge from its own list so that edges sharing an endpoint differ.

    Requires ``len(lists[e]) >= Delta(b)`` for all edges ``e``.
    """
    if b.m == 0:
        return {}
    delta = b.max_degree()
    sets = {e: frozenset(int(c) for c in lists[e]) for e in range(b.m) if e in lists}
    if len(sets) != b.m:
        raise InvalidInput("list assignment must cover every edge")
    short = [e for e, l in sets.items() if len(l) < delta]
    if short:
        raise InvalidInput(f"edges {short} have lists shorter than Delta={delta}")
    orientation = KernelOrientation.from_coloring(b, koenig_edge_coloring(b))
    result: dict[int, int] = {}
    for c in sorted(set().union(*sets.values())):
        s = [e for e in range(b.m) if e not in result and c in sets[e]]
        if s:
            for e in find_kernel(orientation, s):
                result[e] = c
    if len(result) != b.m or not is_proper_edge_coloring(b, result):
        raise CertificateError(
            "internal",
            "kernel method left the edge coloring incomplete or improper",
            {"partial": {str(e): c for e, c in sorted(result.items())}},
        )
    return result
