"""Command-line front end: subcommands, flags, exit codes, outputs."""

from pathlib import Path

import pytest

from shapespace.cli import cli_main
from shapespace.explore import CSV_HEADER


GRAMMARS = Path(__file__).resolve().parents[1] / "src" / "shapespace" / "grammars"


def gg(name):
    return str(GRAMMARS / f"{name}.gg")


def test_check_ok(capsys):
    assert cli_main(["check", gg("firewall-2")]) == 0
    out = capsys.readouterr().out
    assert "5 rules" in out and "ok" in out


def test_check_bad_file(tmp_path, capsys):
    bad = tmp_path / "bad.gg"
    bad.write_text("graph\n  node a X\n")
    assert cli_main(["check", str(bad)]) == 1
    assert "line 2" in capsys.readouterr().err


def test_missing_file():
    assert cli_main(["check", "/no/such/file.gg"]) == 1


def test_bundled_name_resolution(capsys):
    assert cli_main(["check", "counter"]) == 0
    assert "counter" in capsys.readouterr().out


def test_abstract_prints_dot(capsys):
    assert cli_main(["abstract", gg("firewall-2")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph") and "fw" in out


def test_explore_complete_run(tmp_path, capsys):
    csv = tmp_path / "out.csv"
    code = cli_main(["explore", gg("firewall-2"), "--engine", "abstract",
                     "--strategy", "dfs", "--subsumption", "on",
                     "--stats-csv", str(csv)])
    assert code == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 2 and lines[1].startswith("firewall-2,abstract,dfs,on,")


def test_explore_concrete_depth_capped():
    assert cli_main(["explore", gg("counter"), "--engine", "concrete",
                     "--max-depth", "6"]) == 0


def test_explore_timeout_partial(tmp_path):
    csv = tmp_path / "out.csv"
    code = cli_main(["explore", gg("firewall-6F"), "--engine", "abstract",
                     "--subsumption", "off", "--timeout", "0.01",
                     "--stats-csv", str(csv)])
    assert code == 2
    assert csv.read_text().splitlines()[1].endswith(",false")


def test_explore_dot_output(tmp_path):
    dot = tmp_path / "lts.dot"
    assert cli_main(["explore", gg("counter"), "--dot", str(dot)]) == 0
    text = dot.read_text()
    assert text.startswith("digraph") and "add" in text


def test_explore_seedless_flag_accepted():
    assert cli_main(["explore", gg("counter"), "--seedless"]) == 0


def test_bad_flag_usage_exits_1():
    assert cli_main(["explore", gg("counter"), "--engine", "quantum"]) == 1
    assert cli_main(["frobnicate"]) == 1


def test_abstract_engine_with_nac_grammar_errors(tmp_path, capsys):
    f = tmp_path / "nac.gg"
    f.write_text("label P unary\ngraph\n  node a P\n"
                 "rule r\n  use node x P\n  not node y P\n")
    assert cli_main(["explore", str(f), "--engine", "abstract"]) == 1
    assert "negative condition" in capsys.readouterr().err


def test_csv_determinism_across_invocations(tmp_path):
    rows = []
    for i in range(2):
        csv = tmp_path / f"r{i}.csv"
        assert cli_main(["explore", gg("linked-list"), "--strategy", "bfs",
                         "--stats-csv", str(csv)]) == 0
        cells = csv.read_text().splitlines()[1].split(",")
        rows.append(",".join(cells[:12] + cells[14:]))
    assert rows[0] == rows[1]
