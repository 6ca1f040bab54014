import json

import pytest

from sortnetsat.cli import main
from sortnetsat.networks import Network


def test_prefixes_listing(capsys):
    assert main(["prefixes", "5", "--variant", "H"]) == 0
    out = capsys.readouterr().out
    assert "(0,0,0,0,0)" in out
    assert "count: 22" in out


def test_prefixes_count_only(capsys):
    assert main(["prefixes", "11", "--variant", "Tprime", "--count-only"]) == 0
    assert capsys.readouterr().out.strip() == "403"


def test_encode_writes_dimacs_and_map(tmp_path, capsys):
    cnf = tmp_path / "i.cnf"
    vmap = tmp_path / "i.map"
    assert main(["encode", "2", "1", "1", "-o", str(cnf), "--map", str(vmap)]) == 0
    text = cnf.read_text()
    assert text.startswith("p cnf ")
    assert vmap.read_text().startswith("g 1 1 2 -> 1")


def test_encode_to_stdout(capsys):
    assert main(["encode", "2", "1", "1"]) == 0
    assert capsys.readouterr().out.startswith("p cnf ")


def test_solve_builtin_and_verify_and_render(tmp_path, capsys):
    out = tmp_path / "net.json"
    rc = main(["solve", "4", "3", "5", "--backend", "builtin", "-o", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "status: SAT" in printed
    net = Network.from_json(out.read_text())
    assert net.size <= 5

    assert main(["verify", str(out)]) == 0
    assert "is a sorting network" in capsys.readouterr().out

    svg = tmp_path / "net.svg"
    assert main(["render", str(out), "-o", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")


def test_verify_rejects_non_sorter(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 3, "layers": [[[1, 2]]]}))
    assert main(["verify", str(bad)]) == 1
    assert "does NOT sort" in capsys.readouterr().out


def test_optimize_cli_builtin(tmp_path, capsys):
    rc = main([
        "optimize", "4", "--mode", "size", "--depth", "3",
        "--backend", "builtin", "--catalog", str(tmp_path / "cat.jsonl"),
        "--save-witness", str(tmp_path / "w.json"),
    ])
    assert rc == 0
    out = capsys.readouterr().out
    assert "min_size_given_depth(3) = 5 [proven]" in out
    assert (tmp_path / "w.json").exists()


def test_solve_with_prefix(tmp_path, capsys):
    out = tmp_path / "net.json"
    rc = main([
        "solve", "5", "5", "9", "--backend", "builtin",
        "--prefix", "(0,1212)", "-o", str(out),
    ])
    assert rc == 0
    assert "status: SAT" in capsys.readouterr().out
    from sortnetsat.encoding import prefix_network

    net = Network.from_json(out.read_text())
    fixed = prefix_network("(0,1212)", 5)
    assert net.layers[:2] == fixed.layers  # the prefix really was pinned
