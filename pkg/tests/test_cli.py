import json

import pytest

from layered_wheels import WheelPrefix, build_prefix, parse_f_spec
from layered_wheels.cli import main, to_dot, to_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_json(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, err = run(capsys, "build", "--ell", "4", "--f", "cap:3",
                       "--layers", "4", "--out", str(out))
    assert code == 0 and "68 vertices" in err
    obj = json.loads(out.read_text())
    assert obj["layers"] == [4, 8, 16, 40]


def test_build_round_trip_byte_identical(tmp_path, capsys):
    out = tmp_path / "p.json"
    run(capsys, "build", "--ell", "5", "--f", "identity", "--layers", "3",
        "--out", str(out))
    text = out.read_text().strip()
    assert WheelPrefix.from_json(text).to_json() == text


def test_build_rejects_small_ell(capsys):
    code, _, err = run(capsys, "build", "--ell", "3", "--f", "identity",
                       "--layers", "1")
    assert code != 0 and "error" in err


def test_build_rejects_bad_fspec(capsys):
    code, _, err = run(capsys, "build", "--ell", "4", "--f", "bogus:1",
                       "--layers", "1")
    assert code != 0


def test_build_size_cap_error(capsys):
    code, _, err = run(capsys, "build", "--ell", "4", "--f", "identity",
                       "--layers", "10", "--size-cap", "100")
    assert code != 0 and "cap" in err


def test_graph6_c4():
    # C4 on vertices 0-1-2-3-0: bits (01)(02)(12)(03)(13)(23) = 101101
    assert to_graph6(4, [(0, 1), (1, 2), (2, 3), (0, 3)]) == "Cl\n"


def test_graph6_matches_prefix_edges(tmp_path, capsys):
    out = tmp_path / "p.g6"
    run(capsys, "build", "--ell", "4", "--f", "cap:3", "--layers", "2",
        "--out", str(out), "--format", "graph6")
    p = build_prefix(4, parse_f_spec("cap:3"), 2)
    line = out.read_text().strip()
    assert line[0] == chr(p.n_vertices + 63)
    bits = []
    for ch in line[1:]:
        bits.extend((ord(ch) - 63) >> (5 - i) & 1 for i in range(6))
    edges = set()
    pos = 0
    for j in range(1, p.n_vertices):
        for i in range(j):
            if bits[pos]:
                edges.add((i, j))
            pos += 1
    assert edges == set(p.edges())


def test_dot_has_layer_ranks():
    p = build_prefix(4, parse_f_spec("identity"), 2)
    dot = to_dot(p)
    assert dot.count("rank=same") == 2
    assert '"1_0" -> "1_1"' in dot


def test_verify_pass_and_exit_zero(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "build", "--ell", "4", "--f", "cap:3", "--layers", "3",
        "--out", str(f))
    code, out, _ = run(capsys, "verify", "--in", str(f))
    assert code == 0
    rep = json.loads(out)
    assert rep["passed"]
    assert set(rep["checks"]) == {"rules", "holes", "clique", "minor",
                                  "chordal_transversals"}


def test_verify_mutated_fails(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "build", "--ell", "4", "--f", "cap:3", "--layers", "3",
        "--out", str(f))
    obj = json.loads(f.read_text())
    victim = next(v for v in obj["vertices"]
                  if v["layer"] == 2 and v["parent"])
    victim["parent"] = None
    f.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", "--in", str(f), "--rules")
    assert code == 1
    assert not json.loads(out)["passed"]


def test_separate_all_with_decomposition(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "build", "--ell", "4", "--f", "cap:3", "--layers", "4",
        "--out", str(f))
    code, out, err = run(capsys, "separate", "--in", str(f),
                         "--target", "all", "--emit-decomposition")
    assert code == 0
    rep = json.loads(out)
    assert rep["balanced"] and rep["verified"]
    assert rep["order"] <= 21
    assert rep["decomposition"]["valid"]


def test_separate_small_target_file(tmp_path, capsys):
    f = tmp_path / "p.json"
    run(capsys, "build", "--ell", "4", "--f", "cap:3", "--layers", "4",
        "--out", str(f))
    tgt = tmp_path / "x.json"
    tgt.write_text(json.dumps([[1, 0], [1, 1], [2, 0]]))
    code, out, _ = run(capsys, "separate", "--in", str(f),
                       "--target", str(tgt))
    rep = json.loads(out)
    assert code == 0 and rep["n"] == 3 and rep["A"] == rep["B"]


def test_demo_subcommand(tmp_path, capsys):
    code, out, err = run(capsys, "demo", "hajebi", "--c", "2", "--ell", "5",
                         "--t", "3", "--samples", "3",
                         "--size-cap", "10000")
    assert code == 0
    rep = json.loads(out)
    assert rep["all_certified"] and "sample" in err


def test_demo_reproducible(capsys):
    a = run(capsys, "demo", "hajebi", "--c", "2", "--ell", "5", "--t", "3",
            "--samples", "3", "--seed", "5", "--size-cap", "10000")
    b = run(capsys, "demo", "hajebi", "--c", "2", "--ell", "5", "--t", "3",
            "--samples", "3", "--seed", "5", "--size-cap", "10000")
    assert a == b


def test_size_cap_env_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("LWHEEL_SIZE_CAP", "50")
    code, _, err = run(capsys, "build", "--ell", "4", "--f", "identity",
                       "--layers", "4")
    assert code != 0 and "cap" in err
