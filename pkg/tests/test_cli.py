import random
import subprocess
import sys

import pytest

from chvd import cli
from chvd.errors import FormatError, InvariantViolation
from chvd.graph import WeightedGraph, cycle_graph
from chvd.io import format_graph, format_td, parse_graph, parse_td, read_graph, write_graph
from chvd.oracle import RandomSpec, random_instance
from chvd.treedecomp import TreeDecomposition, min_fill_decomposition

C4 = "c a 4-cycle\np chvd 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n"


@pytest.fixture
def c4(tmp_path):
    path = tmp_path / "c4.gr"
    path.write_text(C4)
    return str(path)


class TestFormats:
    def test_parse_weights(self):
        g = parse_graph("p chvd 3 1\ne 1 2\nn 3 7\n")
        assert g.weights == (1, 1, 7) and g.m == 1

    @pytest.mark.parametrize("text", [
        "e 1 2\n",
        "p chvd 2 1\ne 1 3\n",
        "p chvd 2 2\ne 1 2\n",
        "p chvd 2 0\nx 1\n",
        "p chvd two 0\n",
        "p chvd 2 0\nn 1 -3\n",
        "p chvd 2 1\ne 1 1\n",
        "",
    ])
    def test_malformed_graph(self, text):
        with pytest.raises(FormatError):
            parse_graph(text)

    @pytest.mark.parametrize("text", [
        "b 1 1\n",
        "s td 1 2 2\nb 2 1 2\n",
        "s td 2 2 2\nb 1 1 2\n",
        "s td 1 3 2\nb 1 1 2\n",
        "s td 1 2 2\nb 1 1 5\n",
    ])
    def test_malformed_td(self, text):
        with pytest.raises(FormatError):
            parse_td(text)

    def test_graph_round_trip(self, tmp_path):
        for seed in range(20):
            g = random_instance(RandomSpec(9, 0.4, (1, 9), seed))
            assert parse_graph(format_graph(g, ["x"])) == g
            write_graph(g, tmp_path / "g.gr")
            assert read_graph(tmp_path / "g.gr") == g

    def test_td_round_trip(self):
        rng = random.Random(71)
        for seed in range(20):
            g = random_instance(RandomSpec(rng.randint(1, 12), 0.4, (1, 1), seed))
            td = min_fill_decomposition(g)
            back, n = parse_td(format_td(td, g.n))
            assert back == td and n == g.n


class TestCommands:
    def test_solve(self, c4, capsys):
        assert cli.run(["solve", c4]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "deletion_weight 1" and out[-1] == "VERIFIED" and len(out) == 3

    def test_solve_with_td(self, c4, tmp_path, capsys):
        td = tmp_path / "c4.td"
        td.write_text("s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n")
        assert cli.run(["solve", c4, "--td", str(td)]) == 0
        assert capsys.readouterr().out.startswith("deletion_weight 1")

    def test_oracle(self, c4, capsys):
        assert cli.run(["oracle", c4]) == 0
        assert capsys.readouterr().out.splitlines() == ["deletion_weight 1", "1", "VERIFIED"]

    def test_cross_random(self, capsys):
        assert cli.run(["cross", "--random", "50", "--n", "10", "--seed", "3"]) == 0
        assert capsys.readouterr().out.splitlines()[-1] == "50/50 agree"

    def test_gen_choice(self, tmp_path):
        out, labels = tmp_path / "h1.gr", tmp_path / "h1.labels"
        assert cli.run(["gen", "choice", "--s", "1", "--out", str(out), "--labels", str(labels)]) == 0
        assert read_graph(out).n == 75
        assert any(line.startswith("label g1_1 ") for line in labels.read_text().splitlines())

    def test_gen_perm_clique(self, tmp_path):
        out = tmp_path / "h.gr"
        assert cli.run(["gen", "perm-clique", "--k", "2", "--seed", "1", "--out", str(out)]) == 0
        text = out.read_text()
        assert "c budget" in text and parse_graph(text).n > 4

    def test_gen_fvs_subdivision(self, c4, capsys):
        assert cli.run(["gen", "fvs-subdivision", c4]) == 0
        g = parse_graph(capsys.readouterr().out)
        assert g.n == 8 and g.weights[4] == 5

    def test_check_td(self, c4, tmp_path, capsys):
        good = tmp_path / "good.td"
        good.write_text("s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n")
        assert cli.run(["check-td", c4, str(good)]) == 0
        assert capsys.readouterr().out.strip() == "ok width 2"
        bad = tmp_path / "bad.td"
        bad.write_text("s td 2 2 4\nb 1 1 2\nb 2 3 4\n1 2\n")
        assert cli.run(["check-td", c4, str(bad)]) == 2
        assert capsys.readouterr().out.startswith("violation edge")

    def test_decompose(self, c4, capsys):
        assert cli.run(["decompose", c4]) == 0
        td, n = parse_td(capsys.readouterr().out)
        assert n == 4 and td.width == 2

    def test_selftest(self, capsys):
        assert cli.run(["selftest", "--count", "5"]) == 0
        assert "FAIL" not in capsys.readouterr().out


class TestExitCodes:
    def test_missing_file(self, tmp_path):
        assert cli.run(["solve", str(tmp_path / "nope.gr")]) == 1

    def test_parse_error(self, tmp_path):
        p = tmp_path / "bad.gr"
        p.write_text("p chvd 2 1\ne 1 9\n")
        assert cli.run(["solve", str(p)]) == 1

    def test_invalid_decomposition(self, c4, tmp_path):
        td = tmp_path / "bad.td"
        td.write_text("s td 1 2 4\nb 1 1 2\n")
        assert cli.run(["solve", c4, "--td", str(td)]) == 2

    def test_oracle_too_large(self, tmp_path):
        g = WeightedGraph.from_edges(30, [])
        p = tmp_path / "big.gr"
        p.write_text(format_graph(g))
        assert cli.run(["oracle", str(p)]) == 2

    def test_invariant_violation(self, c4, monkeypatch):
        def broken(*args, **kwargs):
            raise InvariantViolation("boom")

        monkeypatch.setattr(cli, "solve", broken)
        assert cli.run(["solve", c4]) == 3

    def test_module_entry_point(self, c4):
        res = subprocess.run([sys.executable, "-m", "chvd", "solve", c4], capture_output=True, text=True)
        assert res.returncode == 0 and res.stdout.splitlines()[0] == "deletion_weight 1"
        assert "min-fill" in res.stderr

    def test_stdin(self, monkeypatch, capsys):
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(format_graph(cycle_graph(5))))
        assert cli.run(["solve", "-"]) == 0
        assert capsys.readouterr().out.startswith("deletion_weight 1")


def test_decomposition_equality_helper():
    assert TreeDecomposition(((1, 0),), ()) == TreeDecomposition(((0, 1),), ())
