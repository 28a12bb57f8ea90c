"""Command-line front end. Exit codes: 0 ok, 1 a report claim failed, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import linalg
from .algebra import AlgebraError, GorensteinAlgebra, collapse_variables, monomial_basis, parse_basis
from .hessian import hessian, hessian_at
from .lefschetz import (
    CertificationError,
    find_lefschetz_element,
    hrr_at_degree,
    hrr_degree1,
    slp_certify,
)
from .polynomial import as_fraction, evaluate, fraction_str
from .polytope import PosetError, face_polynomial, load_poset
from .report import (
    FixtureError,
    export_matrix,
    load_fixture,
    read_matrix,
    render_json,
    render_markdown,
    resolve_hints,
    run_report,
)

EXIT_OK, EXIT_CLAIM, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _parse_point(text: str, n: int) -> list:
    if text.strip().lower() == "ones":
        return [1] * n
    try:
        pt = [as_fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse point {text!r}: {exc}") from exc
    if len(pt) != n:
        raise UsageError(f"point has {len(pt)} coordinates, expected {n}")
    return pt


def _poset(args):
    source = args.target or getattr(args, "poset", None)
    if source is None:
        raise UsageError("no poset given (builtin name, file, or --poset FILE)")
    return load_poset(source)


def _algebra(args, poset, form):
    hints = {} if args.no_hints else resolve_hints(poset, load_fixture(poset.name))
    if getattr(args, "hint", None):
        hints[args.degree] = parse_basis(json.loads(Path(args.hint).read_text()))
    return GorensteinAlgebra(form, hints)


def cmd_hilbert(args) -> int:
    poset = _poset(args)
    _emit(list(GorensteinAlgebra(face_polynomial(poset)).hilbert()))
    return EXIT_OK


def cmd_basis(args) -> int:
    poset = _poset(args)
    form = face_polynomial(poset)
    hint = parse_basis(json.loads(Path(args.hint).read_text())) if args.hint else None
    basis = monomial_basis(form, args.degree, hint=hint)
    _emit([list(m.indices()) for m in basis])
    return EXIT_OK


def cmd_hessian(args) -> int:
    poset = _poset(args)
    form = face_polynomial(poset)
    if args.reduced:
        form, _ = collapse_variables(form)
        alg = GorensteinAlgebra(form)
    else:
        alg = _algebra(args, poset, form)
    basis = alg.basis(args.degree)
    if args.symbolic:
        _emit(hessian(form, args.degree, basis).to_json())
        return EXIT_OK
    if args.at is None:
        raise UsageError("--at is required unless --symbolic is given")
    pt = _parse_point(args.at, form.n_vars)
    _emit(hessian_at(form, args.degree, basis, pt).to_json())
    return EXIT_OK


def cmd_det(args) -> int:
    _emit(fraction_str(linalg.determinant(read_matrix(args.matrix))))
    return EXIT_OK


def cmd_charpoly(args) -> int:
    m = read_matrix(args.matrix)
    coeffs = linalg.charpoly(m)
    _emit({"coefficients_high_first": [fraction_str(c) for c in reversed(coeffs)],
           "polynomial": linalg.charpoly_str(coeffs)})
    return EXIT_OK


def cmd_signature(args) -> int:
    m = read_matrix(args.matrix)
    _emit(linalg.signature(m, args.method, force=args.force).to_json())
    return EXIT_OK


def cmd_slp(args) -> int:
    poset = _poset(args)
    form = face_polynomial(poset)
    pt = _parse_point(args.ell, form.n_vars)
    _emit(slp_certify(form, pt, _algebra(args, poset, form)).to_json())
    return EXIT_OK


def cmd_hrr(args) -> int:
    poset = _poset(args)
    form = face_polynomial(poset)
    pt = _parse_point(args.ell, form.n_vars)
    alg = _algebra(args, poset, form)
    out = {"primitive": hrr_at_degree(form, pt, args.degree, alg).to_json()}
    if args.degree == 1 and evaluate(form, pt) > 0:
        out["hessian_signature"] = hrr_degree1(form, pt, alg).to_json()
    _emit(out)
    return EXIT_OK


def cmd_find(args) -> int:
    poset = _poset(args)
    form = face_polynomial(poset)
    candidates = None
    if args.candidates:
        candidates = [[as_fraction(x) for x in c] for c in json.loads(Path(args.candidates).read_text())]
    res = find_lefschetz_element(form, args.strategy, seed=args.seed, budget=args.budget,
                                 candidates=candidates, algebra=_algebra(args, poset, form))
    _emit(res.to_json())
    return EXIT_OK


def cmd_report(args) -> int:
    poset = _poset(args)
    doc = run_report(poset, seed=args.seed, use_fixture=not args.no_fixture)
    sys.stdout.write(render_json(doc) if args.json else render_markdown(doc))
    return EXIT_OK if doc["passed"] else EXIT_CLAIM


def cmd_export(args) -> int:
    poset = _poset(args)
    point = "ones" if args.at.strip().lower() == "ones" else None
    if point is None:
        n = poset.n_vertices
        point = _parse_point(args.at, n)
    m = export_matrix(poset, args.degree, point, args.out, reduced=args.reduced,
                      use_fixture=not args.no_hints)
    _emit({"written": str(args.out), "shape": list(m.shape)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output where applicable")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--poset", metavar="FILE", default=argparse.SUPPRESS,
                        help="poset JSON file instead of a builtin name")

    parser = argparse.ArgumentParser(
        prog="lefschetz",
        description="Exact Lefschetz / Hodge-Riemann checks for face-poset Gorenstein algebras.",
    )
    parser.add_argument("--json", action="store_true", default=False)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--poset", metavar="FILE", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    def poset_cmd(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("target", nargs="?", help="builtin solid name or poset JSON file")
        p.add_argument("--no-hints", action="store_true",
                       help="ignore stored basis hints, use greedy bases")
        p.set_defaults(func=func)
        return p

    poset_cmd("hilbert", cmd_hilbert, "Hilbert function")
    p = poset_cmd("basis", cmd_basis, "monomial basis of A_k")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--hint", metavar="FILE", help="JSON list of index lists to verify")

    p = poset_cmd("hessian", cmd_hessian, "k-th Hessian matrix")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--at", metavar="A1,A2,...")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--reduced", action="store_true",
                   help="collapse variables identified in A_1 first")
    p.add_argument("--hint", metavar="FILE")

    for name, func, help_ in (("det", cmd_det, "determinant of a matrix JSON file"),
                              ("charpoly", cmd_charpoly, "characteristic polynomial"),
                              ("signature", cmd_signature, "inertia of a symmetric matrix")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("matrix", help="JSON array of arrays of rational strings")
        p.set_defaults(func=func)
        if name == "signature":
            p.add_argument("--method", choices=("congruence", "sturm", "both"), default="both")
            p.add_argument("--force", action="store_true",
                           help="run the Sturm route even for large matrices")

    p = poset_cmd("slp-check", cmd_slp, "strong Lefschetz certificate at l_a")
    p.add_argument("--ell", required=True, metavar="A1,A2,...|ones")

    p = poset_cmd("hrr-check", cmd_hrr, "Hodge-Riemann certificate at l_a, degree k")
    p.add_argument("--ell", required=True, metavar="A1,A2,...|ones")
    p.add_argument("--degree", type=int, default=1)

    p = poset_cmd("find-sle", cmd_find, "search for a strong Lefschetz element")
    p.add_argument("--strategy", choices=("exhaustive-01", "random-rational"),
                   default="exhaustive-01")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--candidates", metavar="FILE", help="JSON list of candidate vectors")

    p = poset_cmd("report", cmd_report, "recompute and diff against stored expectations")
    p.add_argument("--no-fixture", action="store_true")

    p = poset_cmd("export", cmd_export, "write an evaluated Hessian as matrix JSON")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--at", default="ones")
    p.add_argument("--out", required=True)
    p.add_argument("--reduced", action="store_true")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PosetError, AlgebraError, CertificationError, FixtureError,
            linalg.LinalgError, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"lefschetz: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
