import json
import subprocess
import sys

import pytest

from lefschetz.cli import main
from lefschetz.linalg import ExactMatrix
from lefschetz.polytope import builtin
from lefschetz.report import export_matrix, read_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_hilbert(capsys):
    assert run_json(capsys, "hilbert", "hexahedron") == [1, 8, 18, 8, 1]


def test_basis(capsys):
    assert run_json(capsys, "basis", "octahedron", "--degree", "1") == [[1], [2], [3]]


def test_basis_hint_file(capsys, tmp_path):
    hint = tmp_path / "hint.json"
    hint.write_text(json.dumps([[1, 2], [1, 3], [1, 4], [2, 3]]))
    assert run_json(capsys, "basis", "tetrahedron", "--degree", "2", "--hint", str(hint)) == [
        [1, 2], [1, 3], [1, 4], [2, 3]]
    hint.write_text(json.dumps([[1, 2], [3, 4], [1, 3], [2, 4]]))
    code, _, err = run(capsys, "basis", "tetrahedron", "--degree", "2", "--hint", str(hint))
    # (d1d2 + d3d4) F = (d1d3 + d2d4) F = x1 + x2 + x3 + x4
    assert code == 2
    assert "dependent" in err


def test_hessian_at_ones(capsys):
    doc = run_json(capsys, "hessian", "tetrahedron", "--degree", "1", "--at", "ones")
    assert doc == [["0", "2", "2", "2"], ["2", "0", "2", "2"], ["2", "2", "0", "2"], ["2", "2", "2", "0"]]


def test_hessian_symbolic(capsys):
    doc = run_json(capsys, "hessian", "tetrahedron", "--degree", "1", "--symbolic")
    assert doc["entries"][0][1] == "x3 + x4"


def test_hessian_reduced(capsys):
    doc = run_json(capsys, "hessian", "octahedron", "--degree", "1", "--at", "ones", "--reduced")
    assert doc == [["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]]


def test_hessian_needs_point(capsys):
    code, _, err = run(capsys, "hessian", "tetrahedron", "--degree", "1")
    assert code == 2
    assert "--at" in err


def test_rational_point(capsys):
    doc = run_json(capsys, "hessian", "tetrahedron", "--degree", "0", "--at", "1/2,1,1,1")
    assert doc == [["5/2"]]


def test_bad_point(capsys):
    code, _, err = run(capsys, "slp-check", "tetrahedron", "--ell", "1,1")
    assert code == 2
    assert "coordinates" in err
    code, _, _ = run(capsys, "slp-check", "tetrahedron", "--ell", "1,x,1,1")
    assert code == 2


def test_matrix_commands(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([["0", "1", "1"], ["1", "0", "1"], ["1", "1", "0"]]))
    assert run_json(capsys, "det", str(path)) == "2"
    doc = run_json(capsys, "charpoly", str(path))
    assert doc["polynomial"] == "x^3 - 3*x - 2"
    assert doc["coefficients_high_first"] == ["1", "0", "-3", "-2"]
    assert run_json(capsys, "signature", str(path)) == [1, 2, 0]
    assert run_json(capsys, "signature", str(path), "--method", "sturm") == [1, 2, 0]


def test_signature_of_nonsymmetric(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([["1", "2"], ["3", "4"]]))
    code, _, err = run(capsys, "signature", str(path))
    assert code == 2 and "symmetric" in err


def test_slp_check(capsys):
    doc = run_json(capsys, "slp-check", "dodecahedron", "--ell", "0" + ",1" * 19)
    assert doc["verdict"] is True
    assert doc["degrees"][2]["det"] == "342456532992"
    doc = run_json(capsys, "slp-check", "dodecahedron", "--ell", "ones")
    assert doc["verdict"] is False


def test_hrr_check(capsys):
    doc = run_json(capsys, "hrr-check", "icosahedron", "--ell", "ones")
    assert doc["hessian_signature"]["signature"] == [4, 8, 0]
    assert doc["hessian_signature"]["verdict"] is False
    assert doc["primitive"]["verdict"] is False
    doc = run_json(capsys, "hrr-check", "tetrahedron", "--ell", "ones", "--degree", "0")
    assert doc["primitive"]["verdict"] is True


def test_find_sle(capsys, tmp_path):
    cands = tmp_path / "c.json"
    pts = [[1] * 20, [1] * 5 + [0] * 5 + [1] * 10, [0] + [1] * 19]
    cands.write_text(json.dumps(pts))
    doc = run_json(capsys, "find-sle", "dodecahedron", "--candidates", str(cands))
    assert doc["success"] and doc["tried"] == 3
    assert doc["form"] == [str(x) for x in pts[2]]
    doc = run_json(capsys, "find-sle", "tetrahedron", "--strategy", "random-rational",
                   "--seed", "5", "--budget", "1")
    assert doc["success"]


def test_report_markdown_and_json(capsys):
    code, out, _ = run(capsys, "report", "tetrahedron")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(capsys, "report", "tetrahedron", "--json")
    doc = json.loads(out)
    assert doc["status"] == "PASS"
    assert doc["hilbert"] == [1, 4, 4, 1]
    assert all(c["pass"] for c in doc["claims"])


def test_report_without_fixture(capsys, tmp_path):
    path = tmp_path / "triangles.json"
    # two disjoint triangles, no fixture on disk
    path.write_text(json.dumps({"name": "triangles", "n_vertices": 6, "polyhedron": False,
                                "faces": [[1, 2, 3], [4, 5, 6]]}))
    code, out, _ = run(capsys, "report", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "no expectations"
    assert doc["hilbert"] == [1, 6, 6, 1]
    code, out, _ = run(capsys, "report", "hexahedron", "--no-fixture", "--json")
    assert json.loads(out)["status"] == "no expectations"


def test_poset_flag(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps(builtin("tetrahedron").to_json()))
    assert run_json(capsys, "hilbert", "--poset", str(path)) == [1, 4, 4, 1]


@pytest.mark.parametrize("name, degree, reduced", [
    ("tetrahedron", 1, False),
    ("hexahedron", 2, False),
    ("octahedron", 1, True),
])
def test_export_roundtrip(capsys, tmp_path, name, degree, reduced):
    out = tmp_path / f"{name}.json"
    argv = ["export", name, "--degree", str(degree), "--out", str(out)]
    if reduced:
        argv.append("--reduced")
    doc = run_json(capsys, *argv)
    m = read_matrix(out)
    assert list(m.shape) == doc["shape"]
    assert m == export_matrix(builtin(name), degree, "ones", tmp_path / "again.json", reduced=reduced)
    assert out.read_bytes() == (tmp_path / "again.json").read_bytes()
    assert run_json(capsys, "det", str(out)) is not None


def test_export_rational_point(capsys, tmp_path):
    out = tmp_path / "h.json"
    run_json(capsys, "export", "tetrahedron", "--degree", "1", "--at", "1/2,1,1,1", "--out", str(out))
    m = read_matrix(out)
    assert m.rows[1][2] == ExactMatrix([["3/2"]]).rows[0][0]


def test_usage_errors(capsys):
    code, _, err = run(capsys, "hilbert", "no-such-solid")
    assert code == 2
    assert "neither" in err
    code, _, _ = run(capsys, "hilbert")
    assert code == 2
    code, _, _ = run(capsys, "det", "/nonexistent/matrix.json")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lefschetz", "hilbert", "octahedron"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == [1, 3, 3, 1]
