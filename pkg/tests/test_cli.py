"""Command-line interface: exit codes, JSON output, determinism."""

import io
import json
from contextlib import redirect_stdout

from hfree.cartan import finite_gcm
from hfree.cli import main
from hfree.modfam import build_C


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def write_gcm(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(json.dumps(g.to_json()))
    return str(path)


def test_classify_exit_codes(tmp_path):
    a2 = write_gcm(tmp_path, "a2.json", finite_gcm("A", 2))
    g2 = write_gcm(tmp_path, "g2.json", finite_gcm("G", 2))
    code, out = run(["classify", a2])
    assert code == 0
    assert json.loads(out)["verdict"] == "Nonempty"
    code, out = run(["classify", g2])
    assert code == 1
    obj = json.loads(out)
    assert obj["verdict"] == "Empty"
    assert obj["evidence"][0]["rule"] == "rank2"


def test_classify_bad_input(tmp_path):
    code, _ = run(["classify", str(tmp_path / "missing.json")])
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run(["classify", str(bad)])
    assert code == 2
    notgcm = tmp_path / "notgcm.json"
    notgcm.write_text(json.dumps({"matrix": [[1]]}))
    code, _ = run(["classify", str(notgcm)])
    assert code == 2


def test_build_then_verify_round_trip(tmp_path):
    code, out = run(["build", "--family", "C",
                     "--params", '{"l":3,"a":[1,1,1],"S":[1,2,3]}'])
    assert code == 0
    path = tmp_path / "mod.json"
    path.write_text(out)
    code, out = run(["verify", str(path)])
    assert code == 0
    assert json.loads(out)["verdict"] == "holds"


def test_verify_corrupted_module(tmp_path):
    m = build_C(2, [1, 1], {1})
    obj = m.to_json()
    obj["E"][0] = obj["E"][0] + " + 1"
    path = tmp_path / "bad_mod.json"
    path.write_text(json.dumps(obj))
    code, out = run(["verify", str(path)])
    assert code == 1
    assert json.loads(out)["verdict"] == "fails"


def test_probe_simplicity(tmp_path):
    m = build_C(2, [1, 1], {1, 2})
    path = tmp_path / "mod.json"
    m.save(path)
    code, out = run(["probe-simplicity", str(path), "--poly", "H_1^2 + H_2"])
    assert code == 0
    assert json.loads(out)["status"] == "success"
    code, _ = run(["probe-simplicity", str(path), "--poly", "H_1 + ww"])
    assert code == 2


def test_search_rank2_exit_codes():
    code, out = run(["search-rank2", "--r", "1", "--s", "1"])
    assert code == 0
    assert json.loads(out)["verdict"] == "SatKnownFamily"
    code, out = run(["search-rank2", "--r", "3", "--s", "1"])
    assert code == 1
    assert json.loads(out)["verdict"] == "Unsat"
    code, _ = run(["search-rank2", "--r", "0", "--s", "1"])
    assert code == 2


def test_refute_affine():
    code, out = run(["refute-affine", "--k", "1", "--j", "2"])
    assert code == 1
    assert json.loads(out)["verdict"] == "Unsat"
    code, _ = run(["refute-affine", "--k", "1", "--j", "-1"])
    assert code == 2


def test_obstruct(tmp_path):
    b3 = write_gcm(tmp_path, "b3.json", finite_gcm("B", 3))
    c3 = write_gcm(tmp_path, "c3.json", finite_gcm("C", 3))
    code, out = run(["obstruct", b3, "--gen", "2", "--var", "1",
                     "--restrict", "3,1"])
    assert code == 1
    assert json.loads(out)["status"] == "Obstructed"
    code, out = run(["obstruct", c3, "--gen", "2", "--var", "1",
                     "--restrict", "1,3"])
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "Compatible"
    assert obj["unifier_b"] == "-2/3*H_3 - 1/2"
    code, _ = run(["obstruct", b3, "--gen", "2", "--var", "1",
                   "--restrict", "3"])
    assert code == 2


def test_groebner(tmp_path):
    sat = tmp_path / "sat.json"
    sat.write_text(json.dumps({"variables": ["x"], "equations": ["x - 1"]}))
    unsat = tmp_path / "unsat.json"
    unsat.write_text(json.dumps({"variables": ["x"],
                                 "equations": ["x", "x - 1"]}))
    code, out = run(["groebner", str(sat)])
    assert code == 0
    assert json.loads(out)["basis"] == ["x - 1"]
    code, out = run(["groebner", str(unsat)])
    assert code == 1
    assert json.loads(out)["unsat"] is True


def test_deterministic_output(tmp_path):
    b3 = write_gcm(tmp_path, "b3.json", finite_gcm("B", 3))
    _, out1 = run(["classify", b3])
    _, out2 = run(["classify", b3])
    assert out1 == out2


def test_unknown_subcommand():
    code, _ = run(["frobnicate"])
    assert code == 2
