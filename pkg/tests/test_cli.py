import io
import json

import pytest

from numbers_game import cli
from numbers_game.catalog import DynkinType, build_finite, build_inadmissible, minimal_instances
from numbers_game.cli import (GraphSyntaxError, main, parse_graph, parse_graph_file, print_graph,
                              replay_trace)
from numbers_game.core import FiringSequence
from numbers_game.divergence import ParametricLoopCertificate, certificate_catalog


def run(*argv, stdin=""):
    out = io.StringIO()
    code = main(list(argv), io.StringIO(stdin), out)
    return code, out.getvalue()


class TestGraphFiles:
    def test_b2(self):
        assert parse_graph("gcm 1\nnodes 2\nedge 1 2 1 2") == build_finite(DynkinType("B", 2))

    def test_single_node(self):
        assert parse_graph("gcm 1\nnodes 1\n").n == 1

    @pytest.mark.parametrize("text,line", [
        ("gcm 1\nnodes 2\nedge 1 2 1 0", 3),
        ("gcm 2\nnodes 2", 1),
        ("gcm 1\nnodes x", 2),
        ("gcm 1\nnodes 2\nedge 1 3 1 1", 3),
        ("gcm 1\nnodes 2\nedge 1 1 1 1", 3),
        ("gcm 1\nnodes 3\nedge 1 2 1 1\nedge 2 1 1 1", 4),
        ("gcm 1\nnodes 2\nedge 1 2 1", 3),
        ("gcm 1\nnodes 2\nvertex 1", 3),
        ("", 1),
    ])
    def test_syntax_errors(self, text, line):
        with pytest.raises(GraphSyntaxError) as err:
            parse_graph(text)
        assert err.value.line == line

    def test_comments_and_blank_lines(self):
        text = "# a path\ngcm 1\n\nnodes 3\nedge 1 2 1 1  # first\nedge 2 3 1 1\n"
        assert parse_graph(text) == build_finite(DynkinType("A", 3))

    def test_catalog_shorthand(self):
        assert parse_graph("@A3") == build_finite(DynkinType("A", 3))
        assert parse_graph("@Atilde:5") == build_inadmissible("Atilde:5")
        with pytest.raises(GraphSyntaxError):
            parse_graph("@Nope")

    def test_edges_in_written_order(self):
        assert parse_graph_file("gcm 1\nnodes 3\nedge 3 2 1 1\nedge 2 1 1 1").edges == (
            (3, 2, 1, 1), (2, 1, 1, 1))

    def test_round_trip_catalog(self):
        graphs = [build_finite(DynkinType.parse(t)) for t in ("A1", "B4", "C5", "D6", "E8", "F4", "G2")]
        graphs += [build_inadmissible(f) for f in minimal_instances()]
        for g in graphs:
            assert parse_graph(print_graph(g)) == g

    def test_print_format(self):
        assert print_graph(build_finite(DynkinType("B", 2))) == "gcm 1\nnodes 2\nedge 1 2 1 2\n"


class TestPlay:
    def test_examples(self):
        assert run("play", "--graph", "@B2", "--position", "2,3", "--strategy", "greedy-min") == (
            0, "steps=4 terminal=-2,-3\n")
        assert run("play", "--graph", "@Atilde:3", "--position", "1,0,0", "--budget", "50") == (
            2, "steps=50 exhausted\n")

    def test_strategies(self):
        for s in ("greedy-max", "random"):
            assert run("play", "--graph", "@B2", "--position", "2,3", "--strategy", s, "--seed", "4")[0] == 0
        code, text = run("play", "--graph", "@B2", "--position", "2,3", "--strategy", "best")
        assert code == 1 and "unknown strategy" in text

    def test_rational_position(self):
        assert run("play", "--graph", "@A2", "--position", "1/2,1/3") == (0, "steps=3 terminal=-1/3,-1/2\n")

    @pytest.mark.parametrize("argv", [
        ["play", "--graph", "@B2", "--position", "1,x"],
        ["play", "--graph", "@B2", "--position", "1,2,3"],
        ["play", "--graph", "@B2", "--position", "1,1", "--budget", "0"],
        ["play", "--graph", "/nonexistent/graph", "--position", "1"],
        ["play", "--graph", "@B2"],
        ["dance"],
        [],
    ])
    def test_input_errors(self, argv):
        assert run(*argv)[0] == 1

    def test_trace_file(self, tmp_path):
        path = tmp_path / "t.json"
        code, _ = run("play", "--graph", "@B2", "--position", "1/2,1", "--trace-out", str(path))
        data = json.loads(path.read_text())
        assert code == 0 and data["version"] == 1
        assert data["initial"] == ["1/2", "1"]
        assert data["outcome"] == {"kind": "converged", "steps": 4, "terminal": ["-1/2", "-1"]}
        assert replay_trace(data).final == parse_position_values(["-1/2", "-1"])

    def test_tampered_trace_rejected(self, tmp_path):
        path = tmp_path / "t.json"
        run("play", "--graph", "@B2", "--position", "1,1", "--trace-out", str(path))
        data = json.loads(path.read_text())
        data["steps"][1]["position"][0] = "7"
        with pytest.raises(ValueError):
            replay_trace(data)

    def test_exhausted_trace_replays(self, tmp_path):
        path = tmp_path / "t.json"
        code, _ = run("play", "--graph", "@Gtilde2", "--position", "1,0,0", "--budget", "40",
                      "--trace-out", str(path))
        data = json.loads(path.read_text())
        assert code == 2 and data["outcome"] == {"kind": "exhausted", "steps": 40}
        assert len(replay_trace(data)) == 40


def parse_position_values(items):
    from fractions import Fraction
    from numbers_game.core import Position
    return Position(Fraction(x) for x in items)


class TestVerify:
    def test_all(self):
        code, text = run("verify", "--family", "Atilde:4", "--all")
        assert code == 0 and text.splitlines()[-1] == "4/4 certificates verified"

    def test_single(self):
        code, text = run("verify", "--family", "Gtilde1", "--omega", "2")
        assert code == 0
        assert text.splitlines()[0] == "omega 2: verified [region] prefix (γ2,γ1,γ2,γ1,γ2) landing (0,-1,4)"

    def test_unknown_family(self):
        code, text = run("verify", "--family", "A3", "--all")
        assert code == 1 and "not an inadmissible-catalog family" in text

    def test_bad_omega(self):
        assert run("verify", "--family", "Gtilde1", "--omega", "4")[0] == 1

    def test_needs_all_or_omega(self):
        assert run("verify", "--family", "Gtilde1")[0] == 1
        assert run("verify", "--family", "Gtilde1", "--all", "--omega", "1")[0] == 1

    def test_failure_exit_code(self, monkeypatch):
        good = certificate_catalog("Atilde:3", 1)
        broken = ParametricLoopCertificate(good.family_id, 1, good.start, good.prefix, good.family,
                                           FiringSequence([2]))
        monkeypatch.setattr(cli, "certificate_catalog", lambda fid, i: broken)
        code, text = run("verify", "--family", "Atilde:3", "--omega", "1")
        assert code == 3 and "LoopIllegal" in text


class TestClassify:
    def test_catalog(self):
        assert run("classify", "--graph", "@B2") == (0, "finite-type B2\n")
        assert run("classify", "--graph", "@Atilde:3") == (0, "not finite type\n")

    def test_files(self, tmp_path):
        rev = tmp_path / "rev"
        rev.write_text("gcm 1\nnodes 3\nedge 3 2 1 1\nedge 2 1 1 1\n")
        assert run("classify", "--graph", str(rev)) == (0, "finite-type A3 via σ=(3,2,1)\n")
        fwd = tmp_path / "fwd"
        fwd.write_text("gcm 1\nnodes 3\nedge 1 2 1 1\nedge 2 3 1 1\n")
        assert run("classify", "--graph", str(fwd)) == (0, "finite-type A3\n")
        swapped = tmp_path / "c2"
        swapped.write_text("gcm 1\nnodes 2\nedge 1 2 2 1\n")
        assert run("classify", "--graph", str(swapped)) == (0, "finite-type B2 via σ=(2,1)\n")
        apart = tmp_path / "apart"
        apart.write_text("gcm 1\nnodes 2\n")
        assert run("classify", "--graph", str(apart)) == (0, "not finite type\n")

    def test_parse_failure(self, tmp_path):
        bad = tmp_path / "bad"
        bad.write_text("gcm 1\nnodes 2\nedge 1 2 0 1\n")
        assert run("classify", "--graph", str(bad))[0] == 1


class TestRepl:
    def test_b2_transcript(self):
        code, text = run("repl", "--graph", "@B2", "--position", "1,1", stdin="2\n1\n2\n1\n")
        assert code == 0
        assert text.splitlines() == [
            "position: 1,1  legal: 1 2",
            "position: 3,-1  legal: 1",
            "position: -3,2  legal: 2",
            "position: 1,-2  legal: 1",
            "position: -1,-1  legal: ",
            "terminal: -1,-1 (4 firings)",
        ]

    def test_quit(self):
        assert run("repl", "--graph", "@B2", "--position", "1,1", stdin="quit\n") == (
            0, "position: 1,1  legal: 1 2\n")

    def test_no_such_node(self):
        code, text = run("repl", "--graph", "@B2", "--position", "1,1", stdin="5\nquit\n")
        assert code == 0 and text.splitlines()[1] == "no such node"

    def test_illegal_input_keeps_state(self):
        code, text = run("repl", "--graph", "@B2", "--position", "1,0", stdin="2\nhello\nundo\nquit\n")
        lines = text.splitlines()
        assert "not positive" in lines[1]
        assert lines[2] == lines[4] == lines[0] == "position: 1,0  legal: 1"
        assert lines[5] == "nothing to undo"

    def test_undo_and_auto(self):
        code, text = run("repl", "--graph", "@B2", "--position", "1,1", stdin="2\nundo\nauto\n")
        lines = text.splitlines()
        assert lines[2] == "position: 1,1  legal: 1 2"
        assert code == 0 and lines[-1] == "terminal: -1,-1 (4 firings)"

    def test_auto_on_divergent(self):
        code, text = run("repl", "--graph", "@Atilde:3", "--position", "1,0,0", "--budget", "30",
                         stdin="auto\n")
        assert code == 2 and text.splitlines()[-1] == "exhausted after 30 firings"

    def test_already_terminal(self):
        assert run("repl", "--graph", "@A1", "--position", "0")[1].endswith("terminal: 0 (0 firings)\n")

    def test_end_of_input(self):
        assert run("repl", "--graph", "@B2", "--position", "1,1", stdin="2\n")[0] == 0


class TestProbe:
    def test_agree(self):
        code, text = run("probe", "--graph", "@F4", "--position", "1,2,3,4", "--trials", "5")
        assert code == 0 and text == "7 runs agree: steps=24 terminal=-1,-2,-3,-4\n"

    def test_divergent(self):
        code, text = run("probe", "--graph", "@Atilde:3", "--position", "1,0,0", "--budget", "100")
        assert code == 2 and "exhausted" in text


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "numbers_game", "play", "--graph", "@B2", "--position", "2,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "steps=4 terminal=-2,-3\n"

