"""Command line interface: subcommands, formats, and exit codes."""

import json

import pytest

from tighthyp import cli, read_graph
from tighthyp.hypercore import nck


def run(*argv):
    return cli.main(list(argv))


def test_gen_ore_and_solve_refuted(tmp_path, capsys):
    g = tmp_path / "ore.txt"
    assert run("gen", "--family", "ore", "--n", "6", "--k", "2", "--out", str(g)) == 0
    h = read_graph(g)
    assert h.edge_count() == nck(5, 2) + 1
    assert run("solve", "--in", str(g), "--l", "1") == 2
    out = capsys.readouterr().out
    assert "refuted" in out


def test_gen_stdout(capsys):
    assert run("gen", "--family", "complete", "--n", "5", "--k", "3") == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "5 3"
    assert len(lines) == 1 + nck(5, 3)


def test_gen_random_requires_p(tmp_path):
    with pytest.raises(SystemExit):
        run("gen", "--family", "random", "--n", "8", "--k", "3",
            "--out", str(tmp_path / "r.txt"))


def test_gen_clique_link(tmp_path, capsys):
    link = tmp_path / "link.txt"
    run("gen", "--family", "random", "--n", "6", "--k", "2", "--p", "0.0",
        "--out", str(link))
    assert run("gen", "--family", "clique-link", "--n", "7", "--k", "3",
               "--link", str(link), "--out", str(tmp_path / "g.txt")) == 0
    assert read_graph(tmp_path / "g.txt").edge_count() == nck(6, 3)


def test_solve_found_json(tmp_path, capsys):
    g = tmp_path / "k6.txt"
    run("gen", "--family", "complete", "--n", "6", "--k", "3", "--out", str(g))
    capsys.readouterr()
    assert run("solve", "--in", str(g), "--l", "2", "--json") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "found"
    assert sorted(data["ordering"]) == list(range(6))


def test_solve_budget_exhausted(tmp_path):
    g = tmp_path / "ore9.txt"
    run("gen", "--family", "ore", "--n", "9", "--k", "2", "--out", str(g))
    assert run("solve", "--in", str(g), "--l", "1", "--budget", "3") == 3


def test_solve_missing_file():
    assert run("solve", "--in", "/nonexistent/g.txt", "--l", "1") == 1


def test_usage_error_exits_1():
    with pytest.raises(SystemExit) as ei:
        run("solve", "--l", "1")  # --in missing
    assert ei.value.code == 1
    with pytest.raises(SystemExit) as ei:
        run("frobnicate")
    assert ei.value.code == 1


def test_ex_command(tmp_path, capsys):
    assert run("ex", "--n", "6", "--pattern", "path:2,1,4", "--json") == 0
    data = json.loads(capsys.readouterr().out)
    assert data["value"] == 6
    assert len(data["witness_edges"]) == 6
    assert run("ex", "--n", "6", "--pattern", "P:3,2") == 0
    assert "= 6" in capsys.readouterr().out
    assert run("ex", "--n", "9", "--pattern", "path:2,1,4", "--budget", "5") == 3


def test_ex_bad_pattern():
    with pytest.raises(SystemExit):
        run("ex", "--n", "6", "--pattern", "blob:9")


def test_verify_match_and_differ(capsys):
    assert run("verify", "--n", "5", "--k", "2", "--l", "1") == 0
    assert "MATCH" in capsys.readouterr().out
    assert run("verify", "--n", "4", "--k", "3", "--l", "2") == 2
    out = capsys.readouterr().out
    assert "DIFFER" in out and "3" in out and "4" in out


def test_pipeline_found_with_trace(tmp_path, capsys):
    g = tmp_path / "k12.txt"
    run("gen", "--family", "complete", "--n", "12", "--k", "3", "--out", str(g))
    tr = tmp_path / "trace.json"
    code = run("pipeline", "--in", str(g), "--l", "2", "--gamma", "0.3",
               "--beta", "0.3", "--rho", "0.25", "--seed", "7",
               "--trace", str(tr))
    assert code == 0
    assert "found" in capsys.readouterr().out
    trace = json.loads(tr.read_text())
    assert trace["mode"] == "override"
    assert trace["validated"] is True


def test_pipeline_proof_constants_fail(tmp_path, capsys):
    g = tmp_path / "k12.txt"
    run("gen", "--family", "kk", "--n", "12", "--k", "3", "--out", str(g))
    assert run("pipeline", "--in", str(g), "--l", "2") == 4
    assert "failed" in capsys.readouterr().out


def test_scan_exact_csv(tmp_path, capsys):
    csv = tmp_path / "scan.csv"
    code = run("scan", "--k", "2", "--l", "1", "--d", "1",
               "--n-min", "4", "--n-max", "6", "--csv", str(csv))
    assert code == 0
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "n,k,l,d,mode,value,ci_low,ci_high,seed"
    got = {int(r.split(",")[0]): int(r.split(",")[5]) for r in lines[1:]}
    assert got == {4: 2, 5: 3, 6: 3}
    assert all(r.split(",")[4] == "exact" for r in lines[1:])


def test_scan_sampled_mode(capsys):
    code = run("scan", "--k", "2", "--l", "1", "--d", "1",
               "--n-min", "8", "--n-max", "8", "--samples", "4", "--seed", "1")
    assert code == 0
    rows = capsys.readouterr().out.strip().splitlines()
    assert rows[1].split(",")[4] == "sampled"
    assert int(rows[1].split(",")[5]) >= 1
