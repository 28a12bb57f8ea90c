"""Fixture-driven reports for the Platonic solids.

Expected values live in ``lefschetz/data/<solid>.json``. A report recomputes
everything from the face list and diffs it against those expectations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Any

from . import linalg
from .algebra import (
    GorensteinAlgebra,
    annihilator_membership,
    collapse_variables,
    parse_basis,
    verify_octahedron_reduction,
)
from .hessian import hessian_at
from .lefschetz import (
    hrr_at_degree,
    hrr_degree1,
    hrr_degree1_sampled,
    slp_certify,
)
from .linalg import SpectrumClaim
from .polynomial import Monomial, Polynomial, as_fraction, evaluate, fraction_str
from .polytope import FacePoset, derive_edges, face_point, face_polynomial, validate

PROVENANCE = ("published", "derived", "trivial")


class FixtureError(ValueError):
    pass


def coplanar_pairs(poset: FacePoset) -> list[Monomial]:
    """d_i d_j for every pair {i, j} inside a common face, canonical order."""
    pairs = {p for f in poset.faces for p in combinations(sorted(f), 2)}
    return [Monomial.from_indices(p) for p in sorted(pairs)]


def load_fixture(solid: str) -> dict | None:
    try:
        text = resources.files("lefschetz.data").joinpath(f"{solid}.json").read_text()
    except (FileNotFoundError, OSError):
        return None
    data = json.loads(text)
    for claim in data.get("claims", []):
        if claim.get("provenance") not in PROVENANCE:
            raise FixtureError(f"claim {claim.get('id')!r} lacks a valid provenance tag")
    return data


def resolve_points(poset: FacePoset, fixture: dict | None) -> dict[str, list[int]]:
    if not fixture or "points" not in fixture:
        return {"ones": face_point(poset)}
    return {name: face_point(poset, entry.get("zeros", ()))
            for name, entry in fixture["points"].items()}


def resolve_hints(poset: FacePoset, fixture: dict | None) -> dict[int, list[Monomial]]:
    hints = {}
    for k, entry in (fixture or {}).get("basis_hints", {}).items():
        if entry == "coplanar-pairs":
            hints[int(k)] = coplanar_pairs(poset)
        else:
            hints[int(k)] = parse_basis(entry)
    return hints


def _parse_operator(terms, n_vars: int) -> Polynomial:
    out: dict[Monomial, Fraction] = {}
    for coef, idx in terms:
        m = Monomial.from_indices(idx)
        out[m] = out.get(m, Fraction(0)) + as_fraction(coef)
    return Polynomial(n_vars, out)


def is_swap_block_matrix(m: linalg.ExactMatrix) -> int | None:
    """Number of [[0,1],[1,0]] blocks if ``m`` is a symmetric fixed-point-free
    permutation matrix (hence a direct sum of such blocks after reordering)."""
    if not m.is_symmetric():
        return None
    for i, row in enumerate(m.rows):
        ones = [j for j, x in enumerate(row) if x]
        if len(ones) != 1 or row[ones[0]] != 1 or ones[0] == i:
            return None
    return m.nrows // 2


@dataclass
class Context:
    poset: FacePoset
    form: Polynomial
    algebra: GorensteinAlgebra
    points: dict[str, list[int]]
    seed: int
    _reduced: tuple | None = field(default=None, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def reduced(self) -> tuple[Polynomial, GorensteinAlgebra]:
        if self._reduced is None:
            g, _ = collapse_variables(self.form)
            self._reduced = (g, GorensteinAlgebra(g))
        return self._reduced

    def matrix(self, degree: int, point: str, reduced: bool = False) -> linalg.ExactMatrix:
        key = (degree, point, reduced)
        if key not in self._cache:
            if reduced:
                g, alg = self.reduced()
                pt = [1] * g.n_vars if point == "ones" else None
                if pt is None:
                    raise FixtureError("reduced matrices are only defined at 'ones'")
                self._cache[key] = hessian_at(g, degree, alg.basis(degree), pt)
            else:
                self._cache[key] = hessian_at(self.form, degree, self.algebra.basis(degree),
                                              self.points[point])
        return self._cache[key]

    def slp(self, point: str):
        key = ("slp", point)
        if key not in self._cache:
            self._cache[key] = slp_certify(self.form, self.points[point], self.algebra)
        return self._cache[key]


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return fraction_str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def evaluate_claim(ctx: Context, claim: dict) -> tuple[Any, bool]:
    """Compute the claimed quantity; return (actual, passed)."""
    kind = claim["kind"]
    exp = claim["expected"]
    if kind == "hilbert":
        actual = list(ctx.algebra.hilbert())
        return actual, actual == list(exp)
    if kind == "value":
        actual = evaluate(ctx.form, ctx.points[claim["point"]])
        return fraction_str(actual), actual == as_fraction(exp)
    if kind == "basis":
        actual = [list(m.indices()) for m in ctx.algebra.basis(claim["degree"])]
        return actual, actual == exp
    if kind == "octahedron_reduction":
        actual = verify_octahedron_reduction(ctx.form)
        return actual, actual == exp
    if kind == "annihilates":
        ops = [_parse_operator(t, ctx.form.n_vars) for t in claim["operators"]]
        results = [annihilator_membership(o, ctx.form) for o in ops]
        return results, all(r == exp for r in results)
    if kind == "slp":
        actual = ctx.slp(claim["point"]).verdict
        return actual, actual == exp
    if kind == "hrr1":
        cert = hrr_degree1(ctx.form, ctx.points[claim["point"]], ctx.algebra)
        return {"verdict": cert.verdict, "signature": cert.signature.to_json()}, cert.verdict == exp
    if kind == "hrr1_sampled":
        check = hrr_degree1_sampled(ctx.form, claim.get("n_points", 64), ctx.seed, ctx.algebra)
        failures = sum(1 for c in check.certificates if not c.verdict)
        return {"points": len(check.points), "failures": failures}, check.verdict == exp

    m = ctx.matrix(claim["degree"], claim["point"], claim.get("reduced", False))
    if kind == "hessian_matrix":
        return m.to_json(), m == linalg.ExactMatrix(exp)
    if kind == "spectrum":
        ok = linalg.verify_spectrum(m, SpectrumClaim.from_json(exp))
        return linalg.charpoly_str(linalg.charpoly(m)), ok
    if kind == "signature":
        actual = linalg.signature(m, "both").to_json()
        return actual, actual == list(exp)
    if kind == "n_plus_min":
        inertia = linalg.signature(m)
        return inertia.to_json(), inertia.n_plus >= exp
    if kind == "trace":
        t = m.trace()
        return fraction_str(t), t == as_fraction(exp)
    if kind == "swap_blocks":
        blocks = is_swap_block_matrix(m)
        return blocks, blocks == exp
    if kind == "det":
        d = linalg.determinant(m)
        if exp == "nonzero":
            return fraction_str(d), d != 0
        return fraction_str(d), d == as_fraction(exp)
    raise FixtureError(f"unknown claim kind {kind!r}")


def run_report(poset: FacePoset, seed: int = 0, fixture: dict | None = None,
               use_fixture: bool = True) -> dict:
    """Recompute the algebraic data of ``poset`` and diff against its fixture."""
    if use_fixture and fixture is None:
        fixture = load_fixture(poset.name)
    form = face_polynomial(poset)
    algebra = GorensteinAlgebra(form, resolve_hints(poset, fixture))
    points = resolve_points(poset, fixture)
    ctx = Context(poset, form, algebra, points, seed)
    s = algebra.socle_degree
    val = validate(poset)

    doc: dict[str, Any] = {
        "solid": poset.name,
        "seed": seed,
        "poset": {"V": poset.n_vertices, "E": len(derive_edges(poset)), "F": poset.n_faces,
                  "valid": val.ok, "violations": val.violations},
        "form": form.format(),
        "socle_degree": s,
        "hilbert": list(algebra.hilbert()),
        "points": {},
    }
    for name, pt in points.items():
        value = evaluate(form, pt)
        entry: dict[str, Any] = {"a": [str(x) for x in pt], "F(a)": fraction_str(value)}
        entry["slp"] = ctx.slp(name).to_json()
        if s >= 2:
            entry["h1_signature"] = linalg.signature(ctx.matrix(1, name)).to_json()
            if value > 0:
                entry["hrr_degree1"] = hrr_degree1(form, pt, algebra).to_json()
            if value != 0:
                entry["hrr_by_degree"] = [
                    hrr_at_degree(form, pt, k, algebra).to_json() for k in range(s // 2 + 1)
                ]
        doc["points"][name] = entry

    if fixture is None:
        doc["claims"] = None
        doc["status"] = "no expectations"
        doc["passed"] = True
        return doc
    claims = []
    for claim in fixture["claims"]:
        actual, ok = evaluate_claim(ctx, claim)
        claims.append({
            "id": claim["id"],
            "provenance": claim["provenance"],
            "expected": claim["expected"],
            "actual": _jsonable(actual),
            "pass": ok,
        })
    doc["claims"] = claims
    doc["passed"] = all(c["pass"] for c in claims)
    doc["status"] = "PASS" if doc["passed"] else "FAIL"
    return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _short(x: Any, width: int = 60) -> str:
    text = json.dumps(x) if not isinstance(x, str) else x
    return text if len(text) <= width else text[: width - 3] + "..."


def render_markdown(doc: dict) -> str:
    lines = [f"# {doc['solid']}", ""]
    p = doc["poset"]
    lines.append(f"- V = {p['V']}, E = {p['E']}, F = {p['F']}, valid: {p['valid']}")
    lines.append(f"- F_P = {doc['form']}")
    lines.append(f"- socle degree: {doc['socle_degree']}")
    lines.append(f"- Hilbert function: {tuple(doc['hilbert'])}")
    lines.append("")
    lines.append("## Evaluation points")
    for name, e in doc["points"].items():
        lines.append("")
        lines.append(f"### {name}: a = ({', '.join(e['a'])})")
        lines.append(f"- F(a) = {e['F(a)']}")
        dets = ", ".join(f"det H^{d['k']} = {d['det']}" for d in e["slp"]["degrees"])
        lines.append(f"- {dets}")
        lines.append(f"- strong Lefschetz at l_a: {e['slp']['verdict']}")
        if "h1_signature" in e:
            lines.append(f"- inertia of H^1(a): {tuple(e['h1_signature'])}")
        if "hrr_degree1" in e:
            lines.append(f"- Hodge-Riemann in degree 1: {e['hrr_degree1']['verdict']}")
        for c in e.get("hrr_by_degree", []):
            lines.append(
                f"- primitive form, k = {c['degree']}: dim {c['primitive_dim']}, "
                f"inertia {tuple(c['signature'])}, positive definite: {c['verdict']}"
            )
    lines.append("")
    lines.append("## Expectations")
    lines.append("")
    if doc["claims"] is None:
        lines.append("no expectations")
    else:
        lines.append("| claim | provenance | expected | actual | result |")
        lines.append("|---|---|---|---|---|")
        for c in doc["claims"]:
            lines.append(
                f"| {c['id']} | {c['provenance']} | {_short(c['expected'])} | "
                f"{_short(c['actual'])} | {'PASS' if c['pass'] else 'FAIL'} |"
            )
    lines.append("")
    lines.append(f"status: {doc['status']}")
    return "\n".join(lines) + "\n"


def export_matrix(poset: FacePoset, degree: int, point, path: str | Path,
                  reduced: bool = False, use_fixture: bool = True) -> linalg.ExactMatrix:
    """Write the evaluated Hessian as matrix JSON and return it.

    ``point`` may be ``"ones"``; with ``reduced`` the collapsed form is used.
    """
    fixture = load_fixture(poset.name) if use_fixture else None
    form = face_polynomial(poset)
    if reduced:
        form, _ = collapse_variables(form)
        algebra = GorensteinAlgebra(form)
    else:
        algebra = GorensteinAlgebra(form, resolve_hints(poset, fixture))
    if point == "ones":
        point = [1] * form.n_vars
    m = hessian_at(form, degree, algebra.basis(degree), point)
    Path(path).write_text(json.dumps(m.to_json()) + "\n")
    return m


def read_matrix(path: str | Path) -> linalg.ExactMatrix:
    return linalg.ExactMatrix.from_json(json.loads(Path(path).read_text()))
