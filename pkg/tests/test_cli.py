import json
import subprocess
import sys

import pytest

from perfmatch.cli import main
from perfmatch.graph import format_graph, read_graph
from perfmatch.oracle import brute_perfmatch, gen_complete, gen_complete_bipartite, gen_grid


def write(path, G):
    path.write_text(format_graph(G))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_grid(tmp_path, capsys):
    g = write(tmp_path / "g.txt", gen_grid(4, 4))
    assert run(capsys, "count", "--mode", "planar", g) == (0, "36\n", "")
    for mode in ("auto", "k33", "brute"):
        assert run(capsys, "count", "--mode", mode, g)[:2] == (0, "36\n")


def test_count_rational_and_odd(tmp_path, capsys):
    p = tmp_path / "r.txt"
    p.write_text("p pm 2 2\ne 1 2 1/3\ne 1 2 1/6\n")
    assert run(capsys, "count", str(p))[:2] == (0, "1/2\n")
    p.write_text("p pm 3 1\ne 1 2 1\n")
    assert run(capsys, "count", str(p))[:2] == (0, "0\n")


def test_exit_codes(tmp_path, capsys):
    k33 = write(tmp_path / "k33.txt", gen_complete_bipartite([1, 2, 3], [4, 5, 6]))
    code, out, err = run(capsys, "count", "--mode", "k33", k33)
    assert code == 3 and out == "" and "K3,3" in err
    assert run(capsys, "count", "--mode", "planar", k33)[0] == 3
    bad = tmp_path / "bad.txt"
    bad.write_text("p pm 2 1\ne 1 2 x\n")
    code, out, err = run(capsys, "count", str(bad))
    assert code == 2 and out == "" and "line 2" in err
    assert run(capsys, "count", str(tmp_path / "missing.txt"))[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{")
    assert run(capsys, "count", "--decomp", str(junk), k33)[0] == 2


def test_decompose_validate_count(tmp_path, capsys):
    g = tmp_path / "k.txt"
    d = tmp_path / "k.json"
    assert run(capsys, "gen", "k33sum", "--pieces", "5", "--seed", "4", "--weights", "1,3",
               "-o", str(g), "--decomp-out", str(d))[0] == 0
    G = read_graph(g)
    expected = brute_perfmatch(G)
    assert run(capsys, "validate", "--graph", str(g), str(d)) == (0, "OK\n", "")
    assert run(capsys, "count", "--decomp", str(d), str(g))[1] == f"{expected}\n"
    d2 = tmp_path / "k2.json"
    assert run(capsys, "decompose", "--target", "k33", str(g), "-o", str(d2))[0] == 0
    assert run(capsys, "count", "--decomp", str(d2), "--threads", "2", str(g))[1] == f"{expected}\n"
    assert run(capsys, "oracle", str(g))[1] == f"{expected}\n"


def test_validate_reports_violations(tmp_path, capsys):
    g = write(tmp_path / "g.txt", gen_grid(2, 3))
    d = tmp_path / "d.json"
    doc = {"c": 5, "root": 0, "nodes": [
        {"id": 0, "parent": None, "navel": [], "vertices": [1, 2, 3, 4, 5, 6],
         "edges": [[1, 2, "1"], [2, 3, "1"]], "embedding": None}]}
    d.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "validate", "--graph", g, str(d))
    assert code == 4
    lines = out.splitlines()
    assert {l.split()[0] for l in lines} == {"missing-embedding", "composition-mismatch"}
    assert run(capsys, "count", "--decomp", str(d), g)[0] == 4


def test_gen_is_byte_identical(tmp_path, capsys):
    outs = []
    for name in ("a", "b"):
        p = tmp_path / f"{name}.txt"
        run(capsys, "gen", "planar", "--n", "14", "--seed", "9", "-o", str(p))
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    run(capsys, "gen", "grid", "--rows", "3", "--cols", "4", "-o", str(tmp_path / "g.txt"))
    assert read_graph(tmp_path / "g.txt") == gen_grid(3, 4)


def test_bench_small(capsys):
    code, out, err = run(capsys, "bench", "--sizes", "64,128,256", "--seed", "1", "--kernel", "python")
    assert code == 0 and "kernel python" in err
    lines = out.splitlines()
    assert lines[0].split()[0] == "n" and len(lines) == 5
    assert [int(l.split()[0]) for l in lines[1:4]] == [64, 128, 256]
    assert lines[-1].startswith("fitted exponent")


def test_console_script_module():
    r = subprocess.run([sys.executable, "-m", "perfmatch.cli", "count", "--help"], capture_output=True, text=True)
    assert r.returncode == 0 and "--mode" in r.stdout
