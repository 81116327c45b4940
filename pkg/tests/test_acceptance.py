"""Exit criteria at full size. Each test prints one PASS line; the summary lists all ten."""

import subprocess
import sys
from itertools import combinations, product

import numpy as np
import pytest

from elementum import formats as fmt
from elementum.augmentation import realize
from elementum.engine import (
    EngineStats,
    clique_list_check,
    cobipartite_clique_number,
    color_matching_cobipartite,
    list_color_elementary,
    omega_of,
    verify_coloring,
)
from elementum.errors import CertificateError
from elementum.gallai import is_elementary
from elementum.galvin import is_proper_edge_coloring, list_edge_color
from elementum.generators import named_graph, presentation_corpus, random_bipartite_multigraph
from elementum.graph_core import BipartiteMultigraph, SimpleGraph, line_graph, max_clique_desk
from elementum.oracle import (
    choosability_check,
    chromatic_number_exact,
    elementary_bruteforce,
    is_list_colorable_exact,
    perfectness_desk,
)


def random_lists(rng, vertices, size, universe):
    return {v: frozenset(int(c) for c in rng.choice(universe, size=size, replace=False)) for v in vertices}


def random_cobipartite(rng, max_total):
    kx = int(rng.integers(1, max_total))
    ky = int(rng.integers(1, max_total - kx + 1))
    xs, ys = list(range(kx)), list(range(kx, kx + ky))
    edges = set(combinations(xs, 2)) | set(combinations(ys, 2))
    density = rng.random()
    edges |= {(x, y) for x in xs for y in ys if rng.random() < density}
    return SimpleGraph(kx + ky, frozenset(edges)), xs, ys


@pytest.mark.acceptance(1)
def test_recognition_matches_definition_on_six_vertices(criterion):
    pairs = list(combinations(range(6), 2))
    disagreements, elementary = [], 0
    for mask in range(1 << len(pairs)):
        g = SimpleGraph(6, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        fast = bool(is_elementary(g))
        elementary += fast
        if fast != (elementary_bruteforce(g) is not None):
            disagreements.append(mask)
    assert not disagreements, f"disagreements on edge masks {disagreements[:10]}"
    criterion(f"{1 << 15} labelled graphs, {elementary} elementary, 0 disagreements")


@pytest.mark.acceptance(2)
def test_realized_presentations_are_elementary(criterion):
    corpus = presentation_corpus(500, seed=2002, max_n=18)
    assert max(p.h for p in corpus) == 3 and max(realize(p)[0].n for p in corpus) <= 18
    failures = [i for i, p in enumerate(corpus) if not is_elementary(realize(p)[0])]
    assert not failures
    criterion("500 presentations, h in 0..3, 0 rejected")


@pytest.mark.acceptance(3)
def test_engine_colors_every_assignment(criterion):
    corpus = presentation_corpus(200, seed=3003, max_n=18)
    rng = np.random.default_rng(3003)
    stats = EngineStats()
    verified = certificates = 0
    for p in corpus:
        g, _ = realize(p)
        omega = omega_of(p)
        for _ in range(50):
            lists = random_lists(rng, g.vertices, omega, 3 * omega)
            try:
                c = list_color_elementary(p, lists, stats)
            except CertificateError:
                certificates += 1
                continue
            verified += verify_coloring(g, lists, c)
    summary = stats.summary()
    print("engine statistics:", summary)
    assert certificates == 0 and verified == 10_000
    criterion(
        f"10000/10000 verified, 0 certificates; recolor rounds {summary['recolor_rounds']}, "
        f"local fallbacks {summary['local_fallbacks']}, cases {summary['cases']}"
    )


@pytest.mark.acceptance(4)
def test_exhaustive_choosability_on_small_presentations(criterion):
    corpus = presentation_corpus(20, seed=4004, max_n=7, max_omega=3, max_h=2)
    leaves = 0
    for p in corpus:
        g, _ = realize(p)
        omega = omega_of(p)
        assert g.n <= 7 and omega <= 3
        verdict = choosability_check(g, omega, omega + 2, reduce=False)
        assert verdict.holds, f"counterexample {verdict.counterexample}"
        assert chromatic_number_exact(g) == omega
        leaves += verdict.trials
    criterion(f"20 presentations hold within universe omega+2 ({leaves} leaf assignments), chi = omega")


@pytest.mark.acceptance(5)
def test_galvin_base_case(criterion):
    rng = np.random.default_rng(5005)
    runs = 0
    for _ in range(500):
        left, right = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        cap = int(rng.integers(1, 4))
        m = int(rng.integers(1, min(12, left * right * cap) + 1))
        b = random_bipartite_multigraph(left, right, m, cap, int(rng.integers(2**32)))
        delta = b.max_degree()
        for _ in range(100):
            lists = random_lists(rng, range(b.m), delta, 3 * delta)
            c = list_edge_color(b, lists)
            assert is_proper_edge_coloring(b, c) and all(c[e] in lists[e] for e in range(b.m))
            runs += 1
    c4 = BipartiteMultigraph(2, 2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    lg, _ = line_graph(c4)
    two_lists = list(combinations(range(4), 2))
    exhaustive = 0
    for choice in product(two_lists, repeat=4):
        lists = dict(enumerate(choice))
        c = list_edge_color(c4, lists)
        assert is_proper_edge_coloring(c4, c) and all(c[e] in lists[e] for e in range(4))
        assert is_list_colorable_exact(lg, lists) is not None
        exhaustive += 1
    assert runs == 50_000 and exhaustive == 1296
    criterion(f"{runs} random runs and {exhaustive} exhaustive C4 assignments, 0 failures")


@pytest.mark.acceptance(6)
def test_cobipartite_clique_number(criterion):
    rng = np.random.default_rng(6006)
    for _ in range(300):
        g, xs, ys = random_cobipartite(rng, 12)
        omega, mu = cobipartite_clique_number(xs, ys, g)
        assert omega == len(xs) + len(ys) - mu == len(max_clique_desk(g))
    criterion("300 instances, 0 mismatches")


@pytest.mark.acceptance(7)
def test_clique_list_violation_is_fatal(criterion):
    corpus = presentation_corpus(100, seed=7007, max_n=14)
    rng = np.random.default_rng(7007)
    for p in corpus:
        g, _ = realize(p)
        omega = omega_of(p)
        q = sorted(max_clique_desk(g))
        lists = dict(random_lists(rng, g.vertices, omega, 3 * omega))
        if len(q) == 1:
            # a lone vertex cannot violate with nonempty lists; use K2 with clashing singletons
            g, q = SimpleGraph.from_edges(2, [(0, 1)]), [0, 1]
            lists = {0: frozenset({0}), 1: frozenset({0})}
        else:
            squeeze = rng.choice(3 * omega, size=len(q) - 1, replace=False)
            for v in q:
                k = int(rng.integers(1, len(q)))
                lists[v] = frozenset(int(c) for c in rng.choice(squeeze, size=k, replace=False))
        assert clique_list_check(g, lists, q) is not None
        assert is_list_colorable_exact(g, lists) is None
    criterion("100 violating instances, all uncolorable")


@pytest.mark.acceptance(8)
def test_matching_cobipartite_lemma(criterion):
    rng = np.random.default_rng(8008)
    for _ in range(300):
        kx = int(rng.integers(1, 7))
        ky = int(rng.integers(1, kx + 1))
        xs, ys = list(range(kx)), list(range(kx, kx + ky))
        partner = rng.permutation(kx)[:ky]
        missing = {(xs[int(partner[j])], ys[j]) for j in range(ky)}
        edges = set(combinations(xs, 2)) | set(combinations(ys, 2))
        edges |= {(x, y) for x in xs for y in ys if (x, y) not in missing}
        g = SimpleGraph(kx + ky, frozenset(edges))
        universe = int(rng.integers(kx, 2 * kx + 2))
        lists = random_lists(rng, xs, kx, universe)
        lists.update(random_lists(rng, ys, ky, universe))
        c = color_matching_cobipartite(g, xs, ys, lists)
        assert verify_coloring(g, lists, c)
    criterion("300 instances with |X| <= 6 colored and verified, 0 certificates")


@pytest.mark.acceptance(9)
def test_small_presentations_are_perfect(criterion):
    corpus = presentation_corpus(50, seed=9009, max_n=10)
    for p in corpus:
        assert perfectness_desk(realize(p)[0])
    criterion("50 presentations with n <= 10 perfect")


@pytest.mark.acceptance(10)
def test_cli_is_deterministic(criterion, tmp_path):
    def save(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else fmt.dumps(doc))
        return str(path)

    def cli(*argv):
        proc = subprocess.run([sys.executable, "-m", "elementum", *argv], capture_output=True)
        return proc.returncode, proc.stdout

    _, pres = cli("generate", "presentation", "--seed", "10", "--h", "2", "--left", "5", "--right", "5", "--m", "9")
    pres_file = save("p.json", pres.decode())
    _, lists = cli("generate", "lists", "--presentation", pres_file, "--seed", "10")
    lists_file = save("l.json", lists.decode())
    _, coloring = cli("color", pres_file, lists_file)
    coloring_file = save("c.json", coloring.decode())
    graph_file = save("g.json", fmt.graph_to_doc(named_graph("c7_complement")))
    multigraph_file = save("b.json", {"left": 3, "right": 3, "edges": [[0, 0], [0, 0], [1, 1], [2, 1], [2, 2], [0, 2]]})
    edge_lists_file = save("e.json", {"lists": {str(e): [e, e + 1, e + 2] for e in range(6)}})
    k24_file = save("k.json", {"n": 6, "edges": [[a, b] for a in (0, 1) for b in range(2, 6)]})

    commands = {
        "recognize": ("recognize", graph_file),
        "color": ("color", pres_file, lists_file),
        "edge-color": ("edge-color", multigraph_file, edge_lists_file),
        "generate": ("generate", "presentation", "--seed", "77", "--shape", "matching"),
        "oracle": ("oracle", "choosability", k24_file, "--mode", "sampled", "--k", "2", "--universe", "4", "--trials", "200", "--seed", "5"),
        "verify": ("verify", "--presentation", pres_file, "--lists", lists_file, "--coloring", coloring_file),
    }
    for name, argv in commands.items():
        first = cli(*argv)
        assert first[0] in (0, 1), f"{name} exited {first[0]}"
        for _ in range(9):
            assert cli(*argv) == first, f"{name} output changed"
    criterion(f"{len(commands)} subcommands x 10 runs byte-identical")
