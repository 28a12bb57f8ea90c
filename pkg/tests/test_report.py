import copy
import json

import pytest

from lefschetz import face_polynomial, report
from lefschetz.algebra import GorensteinAlgebra
from lefschetz.cli import main
from lefschetz.linalg import ExactMatrix
from lefschetz.polytope import BUILTIN_NAMES, builtin
from lefschetz.report import (
    Context,
    FixtureError,
    evaluate_claim,
    is_swap_block_matrix,
    load_fixture,
    render_json,
    render_markdown,
    run_report,
)

PROVENANCE = {"published", "derived", "trivial"}


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_fixture_claims_are_tagged(name):
    fixture = load_fixture(name)
    assert fixture["solid"] == name
    ids = [c["id"] for c in fixture["claims"]]
    assert len(ids) == len(set(ids))
    assert {c["provenance"] for c in fixture["claims"]} <= PROVENANCE


def test_tetrahedron_report_passes():
    doc = run_report(builtin("tetrahedron"))
    assert doc["passed"] and doc["status"] == "PASS"
    ones = doc["points"]["ones"]
    assert ones["F(a)"] == "4"
    assert ones["h1_signature"] == [1, 3, 0]
    assert [c["degree"] for c in ones["hrr_by_degree"]] == [0, 1]


def test_dodecahedron_points_in_report():
    fixture = load_fixture("dodecahedron")
    # only the cheap claims, to keep this quick
    fixture = dict(fixture, claims=[c for c in fixture["claims"] if c["kind"] in ("value", "trace")])
    doc = run_report(builtin("dodecahedron"), fixture=fixture)
    assert set(doc["points"]) == {"ones", "b", "c"}
    assert doc["points"]["c"]["F(a)"] == "9"
    assert doc["passed"]


def test_wrong_expectation_fails(monkeypatch, capsys):
    fixture = copy.deepcopy(load_fixture("tetrahedron"))
    fixture["claims"][0]["expected"] = [1, 4, 5, 1]
    monkeypatch.setattr(report, "load_fixture", lambda name: fixture)
    doc = run_report(builtin("tetrahedron"))
    assert not doc["passed"]
    assert doc["status"] == "FAIL"
    assert [c["pass"] for c in doc["claims"]].count(False) == 1
    assert main(["report", "tetrahedron"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_missing_provenance_rejected(monkeypatch):
    bad = {"solid": "tetrahedron", "claims": [{"id": "x", "kind": "hilbert", "expected": []}]}

    class Fake:
        def joinpath(self, _):
            return self

        def read_text(self):
            return json.dumps(bad)

    monkeypatch.setattr(report.resources, "files", lambda _: Fake())
    with pytest.raises(FixtureError):
        load_fixture("tetrahedron")


def test_unknown_claim_kind():
    fixture = {"points": {"ones": {"zeros": []}},
               "claims": [{"id": "q", "kind": "mystery", "degree": 1, "point": "ones",
                           "expected": 0, "provenance": "trivial"}]}
    with pytest.raises(FixtureError):
        run_report(builtin("tetrahedron"), fixture=fixture)


def test_swap_block_detector():
    assert is_swap_block_matrix(ExactMatrix([[0, 1], [1, 0]])) == 1
    assert is_swap_block_matrix(ExactMatrix([[1, 0], [0, 1]])) is None
    assert is_swap_block_matrix(ExactMatrix([[0, 2], [2, 0]])) is None


def test_renderers_are_stable():
    doc = run_report(builtin("octahedron"))
    assert render_json(doc) == render_json(json.loads(render_json(doc)))
    md = render_markdown(doc)
    assert md.startswith("# octahedron")
    assert md.rstrip().endswith("status: PASS")
    assert "| octahedron-reduction | published | true | true | PASS |" in md


def test_reduced_matrix_only_at_ones():
    p = builtin("octahedron")
    f = face_polynomial(p)
    ctx = Context(p, f, GorensteinAlgebra(f), {"ones": [1] * 6, "other": [1, 2, 1, 1, 1, 1]}, 0)
    assert ctx.matrix(1, "ones", reduced=True).shape == (3, 3)
    with pytest.raises(FixtureError):
        ctx.matrix(1, "other", reduced=True)
    actual, ok = evaluate_claim(ctx, {"kind": "det", "degree": 1, "point": "other",
                                      "expected": "nonzero"})
    assert ok
