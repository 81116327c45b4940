import json
import subprocess
import sys

import pytest

from elementum import cli
from elementum import formats as fmt
from elementum.augmentation import realize
from elementum.errors import CertificateError, InvalidInput
from elementum.generators import named_graph
from elementum.graph_core import BipartiteMultigraph

STAR_PRESENTATION = {"b": {"left": 1, "right": 3, "edges": [[0, 0], [0, 1], [0, 2]]}, "augments": []}
K24 = {"n": 6, "edges": [[a, b] for a in (0, 1) for b in range(2, 6)]}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestFormats:
    def test_dumps_inlines_integer_lists(self):
        text = fmt.dumps({"edges": [[0, 1], [1, 2]], "n": 3})
        assert "[0, 1]" in text and text.endswith("\n")
        assert json.loads(text) == {"edges": [[0, 1], [1, 2]], "n": 3}

    def test_graph_round_trip(self):
        g = named_graph("c5")
        assert fmt.graph_from_doc(json.loads(fmt.dumps(fmt.graph_to_doc(g)))) == g

    def test_presentation_round_trip(self):
        doc = {
            "b": {"left": 2, "right": 2, "edges": [[0, 0], [1, 0], [1, 1]]},
            "augments": [{"flat_edge": [1, 2], "x_size": 2, "y_size": 1, "cross_edges": [[0, 0]]}],
        }
        p = fmt.presentation_from_doc(doc)
        assert fmt.presentation_to_doc(p) == doc
        assert realize(p)[0].n == 4

    def test_multigraph_round_trip(self):
        b = BipartiteMultigraph(2, 2, ((0, 0), (0, 0), (1, 1)))
        assert fmt.multigraph_from_doc(fmt.multigraph_to_doc(b)) == b

    def test_lists_and_coloring(self):
        lists = {0: {3, 1}, 1: {2}}
        assert fmt.lists_from_doc(fmt.lists_to_doc(lists)) == lists
        assert fmt.coloring_from_doc(fmt.coloring_to_doc({1: 2, 0: 1})) == {0: 1, 1: 2}

    @pytest.mark.parametrize(
        "doc",
        [
            {"lists": {"a": [1]}},
            {"lists": {"0": [-1]}},
            {"lists": {"0": [True]}},
            {"lists": {"0": 3}},
            {"no_lists": {}},
        ],
    )
    def test_bad_lists(self, doc):
        with pytest.raises(InvalidInput):
            fmt.lists_from_doc(doc)

    @pytest.mark.parametrize(
        "doc",
        [{"n": 3}, {"n": "3", "edges": []}, {"n": 3, "edges": [[0, 1, 2]]}, {"n": 2, "edges": [[0, 5]]}],
    )
    def test_bad_graphs(self, doc):
        with pytest.raises(InvalidInput):
            fmt.graph_from_doc(doc)

    def test_malformed_json(self):
        with pytest.raises(InvalidInput):
            fmt.loads("{nope")

    def test_dot(self):
        text = fmt.to_dot(named_graph("p3"), tags={(0, 1): "pink", (1, 2): "green"})
        assert text.startswith("graph G {") and '0 -- 1 [color="pink"];' in text


class TestRecognize:
    def test_claw(self, tmp_path, capsys):
        code, out, _ = run(capsys, "recognize", write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("claw"))))
        assert code == 1 and len(json.loads(out)["odd_gallai_cycle"]) == 3

    def test_triangle_all_pink(self, tmp_path, capsys):
        code, out, _ = run(capsys, "recognize", write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("k3"))))
        assert code == 0 and json.loads(out) == {"pink": [[0, 1], [0, 2], [1, 2]], "green": []}

    def test_malformed(self, tmp_path, capsys):
        code, _, err = run(capsys, "recognize", write(tmp_path, "g.json", "{broken"))
        assert code == 2 and "malformed" in err

    def test_missing_file(self, tmp_path, capsys):
        assert run(capsys, "recognize", str(tmp_path / "absent.json"))[0] == 2

    def test_dot(self, tmp_path, capsys):
        code, out, _ = run(capsys, "recognize", "--dot", write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("c4"))))
        assert code == 0 and out.startswith("graph G {") and "pink" in out and "green" in out

    def test_bicoloring_verifies(self, tmp_path, capsys):
        graph = write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("c4")))
        _, out, _ = run(capsys, "recognize", graph)
        code, out, _ = run(capsys, "verify", "--graph", graph, "--bicoloring", write(tmp_path, "b.json", out))
        assert code == 0 and json.loads(out) == {"valid": True}


class TestColor:
    def test_star(self, tmp_path, capsys):
        pres = write(tmp_path, "p.json", STAR_PRESENTATION)
        lists = write(tmp_path, "l.json", {"lists": {str(v): [1, 2, 3] for v in range(3)}})
        code, out, _ = run(capsys, "color", pres, lists)
        assert code == 0 and sorted(json.loads(out)["colors"].values()) == [1, 2, 3]
        col = write(tmp_path, "c.json", out)
        code, out, _ = run(capsys, "verify", "--presentation", pres, "--lists", lists, "--coloring", col)
        assert code == 0 and json.loads(out)["valid"]

    def test_undersized_lists(self, tmp_path, capsys):
        pres = write(tmp_path, "p.json", STAR_PRESENTATION)
        lists = write(tmp_path, "l.json", {"lists": {str(v): [1, 2] for v in range(3)}})
        code, out, _ = run(capsys, "color", pres, lists)
        assert code == 2 and json.loads(out)["omega"] == 3

    def test_log_retries(self, tmp_path, capsys):
        pres = write(tmp_path, "p.json", STAR_PRESENTATION)
        lists = write(tmp_path, "l.json", {"lists": {str(v): [1, 2, 3] for v in range(3)}})
        code, _, err = run(capsys, "color", "--log-retries", pres, lists)
        assert code == 0 and json.loads(err.strip().splitlines()[-1])["recolor_rounds"] == 0

    def test_certificate_exit(self, tmp_path, capsys, monkeypatch):
        def boom(*_args, **_kw):
            raise CertificateError("theorem-counterexample", "forced", {"augment": [1]})

        monkeypatch.setattr(cli, "list_color_elementary", boom)
        pres = write(tmp_path, "p.json", STAR_PRESENTATION)
        lists = write(tmp_path, "l.json", {"lists": {str(v): [1, 2, 3] for v in range(3)}})
        code, out, _ = run(capsys, "color", pres, lists)
        assert code == 3 and json.loads(out)["certificate"]["kind"] == "theorem-counterexample"

    def test_generated_round_trip(self, tmp_path, capsys):
        _, pres_text, _ = run(capsys, "generate", "presentation", "--seed", "1")
        pres = write(tmp_path, "p.json", pres_text)
        _, lists_text, _ = run(capsys, "generate", "lists", "--presentation", pres, "--seed", "2")
        lists = write(tmp_path, "l.json", lists_text)
        code, out, _ = run(capsys, "color", pres, lists)
        assert code == 0
        code, out, _ = run(capsys, "verify", "--presentation", pres, "--lists", lists, "--coloring", write(tmp_path, "c.json", out))
        assert code == 0


class TestEdgeColor:
    def test_round_trip(self, tmp_path, capsys):
        mg = write(tmp_path, "b.json", {"left": 2, "right": 2, "edges": [[0, 0], [0, 1], [1, 0], [1, 1], [0, 0]]})
        lists = write(tmp_path, "l.json", {"lists": {str(e): [4, 5, 6] for e in range(5)}})
        code, out, _ = run(capsys, "edge-color", mg, lists)
        assert code == 0
        code, out, _ = run(capsys, "verify", "--multigraph", mg, "--lists", lists, "--coloring", write(tmp_path, "c.json", out))
        assert code == 0 and json.loads(out)["valid"]

    def test_short_lists(self, tmp_path, capsys):
        mg = write(tmp_path, "b.json", {"left": 1, "right": 2, "edges": [[0, 0], [0, 1]]})
        lists = write(tmp_path, "l.json", {"lists": {"0": [1], "1": [1, 2]}})
        assert run(capsys, "edge-color", mg, lists)[0] == 2


class TestGenerate:
    @pytest.mark.parametrize(
        "argv",
        [
            ("generate", "multigraph", "--seed", "3"),
            ("generate", "presentation", "--seed", "3", "--shape", "matching"),
            ("generate", "peculiar"),
            ("generate", "named", "c7_complement"),
            ("generate", "named", "claw", "--dot"),
        ],
    )
    def test_byte_identical(self, capsys, argv):
        first = run(capsys, *argv)
        assert first[0] == 0
        assert all(run(capsys, *argv)[1] == first[1] for _ in range(3))

    def test_seed_from_environment(self, capsys, monkeypatch):
        monkeypatch.setenv("ELEMENTUM_SEED", "3")
        env = run(capsys, "generate", "multigraph")
        assert env[0] == 0 and env[1] == run(capsys, "generate", "multigraph", "--seed", "3")[1]

    def test_seed_required(self, capsys, monkeypatch):
        monkeypatch.delenv("ELEMENTUM_SEED", raising=False)
        assert run(capsys, "generate", "multigraph")[0] == 2

    def test_peculiar_spec_file(self, tmp_path, capsys):
        spec = {"a_sizes": [1, 1, 1], "b_sizes": [1, 1, 1], "q_sizes": [2, 1, 1], "removed": [[[0, 0]], [[0, 0]], [[0, 0]]]}
        code, out, _ = run(capsys, "generate", "peculiar", "--spec", write(tmp_path, "s.json", spec))
        assert code == 0 and json.loads(out)["n"] == 10
        assert run(capsys, "generate", "peculiar", "--spec", write(tmp_path, "t.json", {"a_sizes": [1]}))[0] == 2

    def test_unknown_name(self, capsys):
        assert run(capsys, "generate", "named", "petersen")[0] == 2


class TestOracle:
    def test_chromatic(self, tmp_path, capsys):
        code, out, _ = run(capsys, "oracle", "chromatic", write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("c5"))))
        assert code == 0 and json.loads(out) == {"chromatic_number": 3}

    def test_list(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", {"n": 2, "edges": [[0, 1]]})
        bad = write(tmp_path, "l.json", {"lists": {"0": [1], "1": [1]}})
        good = write(tmp_path, "m.json", {"lists": {"0": [1], "1": [2]}})
        assert run(capsys, "oracle", "list", g, bad)[0] == 1
        code, out, _ = run(capsys, "oracle", "list", g, good)
        assert code == 0 and json.loads(out)["colors"] == {"0": 1, "1": 2}
        assert run(capsys, "oracle", "list", g)[0] == 2

    def test_choosability_counterexample(self, tmp_path, capsys):
        code, out, _ = run(capsys, "oracle", "choosability", write(tmp_path, "g.json", K24), "--k", "2", "--universe", "4")
        doc = json.loads(out)
        assert code == 1 and doc["result"] == "counterexample" and "universe" in doc["scope"]
        lists = write(tmp_path, "l.json", doc["counterexample"])
        assert run(capsys, "oracle", "list", write(tmp_path, "g.json", K24), lists)[0] == 1

    def test_choosability_holds(self, tmp_path, capsys):
        code, out, _ = run(capsys, "oracle", "choosability", write(tmp_path, "g.json", fmt.graph_to_doc(named_graph("c4"))), "--k", "2")
        assert code == 0 and json.loads(out)["result"] == "holds"

    def test_sampled_needs_seed(self, tmp_path, capsys, monkeypatch):
        monkeypatch.delenv("ELEMENTUM_SEED", raising=False)
        g = write(tmp_path, "g.json", K24)
        assert run(capsys, "oracle", "choosability", g, "--mode", "sampled")[0] == 2
        code, out, _ = run(capsys, "oracle", "choosability", g, "--mode", "sampled", "--seed", "4", "--trials", "20")
        assert code in (0, 1) and json.loads(out)["seed"] == 4


class TestVerifyAndUsage:
    def test_invalid_coloring(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", {"n": 2, "edges": [[0, 1]]})
        c = write(tmp_path, "c.json", {"colors": {"0": 1, "1": 1}})
        code, out, _ = run(capsys, "verify", "--graph", g, "--coloring", c)
        assert code == 1 and json.loads(out) == {"valid": False}

    def test_partial_coloring(self, tmp_path, capsys):
        g = write(tmp_path, "g.json", {"n": 2, "edges": [[0, 1]]})
        c = write(tmp_path, "c.json", {"colors": {"0": 1}})
        assert run(capsys, "verify", "--graph", g, "--coloring", c)[0] == 2

    def test_nothing_to_verify(self, capsys):
        assert run(capsys, "verify")[0] == 2

    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main([])
        assert exc.value.code == 2

    def test_bad_option(self, capsys):
        with pytest.raises(SystemExit) as exc:
            cli.main(["generate", "named", "--frobnicate"])
        assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(fmt.graph_to_doc(named_graph("claw"))))
    proc = subprocess.run([sys.executable, "-m", "elementum", "recognize", str(path)], capture_output=True, text=True)
    assert proc.returncode == 1 and "odd_gallai_cycle" in proc.stdout
