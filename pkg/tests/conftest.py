from __future__ import annotations

from itertools import combinations, permutations, product

import pytest
from hypothesis import strategies as st

from elementum.graph_core import SimpleGraph


def brute_max_matching(g: SimpleGraph) -> int:
    edges = sorted(g.edges)
    for r in range(min(len(edges), g.n // 2), 0, -1):
        for sub in combinations(edges, r):
            ends = [v for e in sub for v in e]
            if len(ends) == len(set(ends)):
                return r
    return 0


def brute_max_clique(g: SimpleGraph) -> int:
    for r in range(g.n, 0, -1):
        for sub in combinations(range(g.n), r):
            if all(g.has_edge(u, v) for u, v in combinations(sub, 2)):
                return r
    return 0


def brute_is_list_colorable(g: SimpleGraph, lists) -> bool:
    verts = list(g.vertices)
    for choice in product(*(sorted(lists[v]) for v in verts)):
        if all(choice[u] != choice[v] for u, v in g.edges):
            return True
    return False


def isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    for perm in permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 7) -> SimpleGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph(n, frozenset(p for p, keep in zip(pairs, mask) if keep))


@st.composite
def bipartite_graphs(draw, max_side: int = 6):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    pairs = [(i, a + j) for i in range(a) for j in range(b)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = SimpleGraph(a + b, frozenset(p for p, keep in zip(pairs, mask) if keep))
    return g, (range(a), range(a, a + b))


@pytest.fixture
def c5() -> SimpleGraph:
    return SimpleGraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def k4() -> SimpleGraph:
    return SimpleGraph(4, frozenset(combinations(range(4), 2)))


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion; ``report(detail)`` marks success."""
    number = request.node.get_closest_marker("acceptance").args[0]
    _ACCEPTANCE[number] = (False, "did not finish")

    def report(detail: str) -> None:
        _ACCEPTANCE[number] = (True, detail)
        print(f"criterion {number}: PASS ({detail})")

    yield report


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker and call.when == "call" and call.excinfo is not None:
        _ACCEPTANCE[marker.args[0]] = (False, call.excinfo.exconly().splitlines()[0][:160])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
