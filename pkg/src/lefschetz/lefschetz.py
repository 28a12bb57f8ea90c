"""Strong Lefschetz and Hodge-Riemann certificates at a linear form l_a.

SLP at l_a holds iff det H^k(a) != 0 for every k <= s/2 (k = 0 meaning
F(a) != 0). HRR at degree k asks that (-1)^k H^k(a) be positive definite on
the primitive subspace Ker(x l_a^{s-2k+1}) of A_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg
from .algebra import GorensteinAlgebra
from .hessian import hessian_at, mixed_hessian_at
from .linalg import ExactMatrix, Inertia
from .polynomial import (
    Monomial,
    Polynomial,
    apply_monomial,
    apply_power,
    as_fraction,
    evaluate,
    fraction_str,
)

# Coordinates for random positive points: p/q with 1 <= p, q <= 4.
POSITIVE_GRID = tuple(sorted({Fraction(p, q) for p in range(1, 5) for q in range(1, 5)}))


class CertificationError(ValueError):
    pass


def _point(a: Sequence, n: int) -> tuple[Fraction, ...]:
    pt = tuple(as_fraction(x) for x in a)
    if len(pt) != n:
        raise CertificationError(f"linear form has {len(pt)} coordinates, expected {n}")
    return pt


def _algebra(f, algebra: GorensteinAlgebra | None) -> GorensteinAlgebra:
    if algebra is None:
        return GorensteinAlgebra(f)
    if algebra.form is not f and algebra.form != f:
        raise CertificationError("algebra was built for a different form")
    return algebra


def _fmt_point(a) -> list[str]:
    return [fraction_str(x) for x in a]


@dataclass(frozen=True)
class DegreeVerdict:
    k: int
    size: int
    det: Fraction
    bijective: bool

    def to_json(self) -> dict:
        return {"k": self.k, "size": self.size, "det": fraction_str(self.det),
                "bijective": self.bijective}


@dataclass(frozen=True)
class SLPCertificate:
    form: tuple[Fraction, ...]
    degrees: tuple[DegreeVerdict, ...]

    @property
    def verdict(self) -> bool:
        return all(d.bijective for d in self.degrees)

    def failing_degrees(self) -> list[int]:
        return [d.k for d in self.degrees if not d.bijective]

    def det(self, k: int) -> Fraction:
        return next(d.det for d in self.degrees if d.k == k)

    def to_json(self) -> dict:
        return {
            "kind": "slp",
            "form": _fmt_point(self.form),
            "degrees": [d.to_json() for d in self.degrees],
            "verdict": self.verdict,
        }


@dataclass(frozen=True)
class HRRCertificate:
    form: tuple[Fraction, ...]
    degree: int
    kernel_dim: int
    signature: Inertia
    verdict: bool
    method: str

    def to_json(self) -> dict:
        return {
            "kind": "hrr",
            "form": _fmt_point(self.form),
            "degree": self.degree,
            "method": self.method,
            "primitive_dim": self.kernel_dim,
            "signature": self.signature.to_json(),
            "verdict": self.verdict,
        }


def slp_certify(f: Polynomial, a: Sequence,
                algebra: GorensteinAlgebra | None = None) -> SLPCertificate:
    pt = _point(a, f.n_vars)
    if not any(pt):
        raise CertificationError("the zero form is never a Lefschetz element")
    alg = _algebra(f, algebra)
    records = []
    for k in range(alg.socle_degree // 2 + 1):
        h = hessian_at(f, k, alg.basis(k), pt)
        det = linalg.determinant(h)
        records.append(DegreeVerdict(k, h.nrows, det, det != 0))
    return SLPCertificate(pt, tuple(records))


def hrr_degree1(f: Polynomial, a: Sequence,
                algebra: GorensteinAlgebra | None = None) -> HRRCertificate:
    """Degree-one HRR through the full first Hessian.

    For F(a) > 0 it holds iff H^1(a) has exactly one positive and h_1 - 1
    negative eigenvalues, with h_1 = dim A_1 in place of the variable count.
    """
    pt = _point(a, f.n_vars)
    value = evaluate(f, pt)
    if value <= 0:
        raise CertificationError(f"degree-one HRR test needs F(a) > 0, got {fraction_str(value)}")
    alg = _algebra(f, algebra)
    if alg.socle_degree < 2:
        raise CertificationError("degree-one HRR needs socle degree >= 2")
    h1 = alg.h(1)
    inertia = linalg.signature(hessian_at(f, 1, alg.basis(1), pt))
    return HRRCertificate(pt, 1, h1 - 1, inertia, inertia.as_tuple() == (1, h1 - 1, 0),
                          "hessian-signature")


def primitive_kernel(f: Polynomial, a: Sequence, k: int,
                     algebra: GorensteinAlgebra | None = None) -> list[list[Fraction]]:
    """Coordinates (in the A_k basis) spanning Ker(x l_a^{s-2k+1}) in A_k."""
    pt = _point(a, f.n_vars)
    alg = _algebra(f, algebra)
    if k == 0:
        return [[Fraction(1)]]
    mixed = mixed_hessian_at(f, alg.basis(k - 1), alg.basis(k), pt)
    return linalg.kernel(mixed)


def hrr_at_degree(f: Polynomial, a: Sequence, k: int,
                  algebra: GorensteinAlgebra | None = None) -> HRRCertificate:
    pt = _point(a, f.n_vars)
    alg = _algebra(f, algebra)
    s = alg.socle_degree
    if not 0 <= k <= s // 2:
        raise CertificationError(f"degree {k} outside 0..{s // 2}")
    value = evaluate(f, pt)
    if value == 0:
        raise CertificationError("HRR test needs F(a) != 0")
    if k == 0:
        inertia = Inertia(1, 0, 0) if value > 0 else Inertia(0, 1, 0)
        return HRRCertificate(pt, 0, 1, inertia, value > 0, "primitive-restriction")
    basis_vectors = primitive_kernel(f, pt, k, alg)
    h = hessian_at(f, k, alg.basis(k), pt)
    if basis_vectors:
        n = ExactMatrix(basis_vectors).T
        restricted = (n.T @ h @ n).scale((-1) ** k)
        inertia = linalg.signature(restricted)
    else:
        inertia = Inertia(0, 0, 0)
    dim = len(basis_vectors)
    return HRRCertificate(pt, k, dim, inertia, inertia.n_plus == dim,
                          "primitive-restriction")


def multiplication_rank(f: Polynomial, a: Sequence, k: int,
                        basis: Sequence[Monomial]) -> int:
    """Rank of x l_a^{s-2k}: A_k -> A_{s-k}, assembled from derivative images.

    A_k is realised as span{e F}; the map sends e F to l_a^{s-2k}(e F).
    """
    pt = _point(a, f.n_vars)
    s = f.degree()
    ell = Polynomial.linear_form(pt)
    images = [apply_power(ell, s - 2 * k, apply_monomial(e, f)) for e in basis]
    cols = sorted({m for im in images for m in im.terms}, key=Monomial.sort_key)
    if not cols:
        return 0
    return linalg.rank([[im.coefficient(c) for c in cols] for im in images])


def q1_matrix(f: Polynomial, a: Sequence, basis: Sequence[Monomial]) -> ExactMatrix:
    """Q^1(e_i, e_j) = -(l_a^{s-2} e_i e_j F), computed by repeated l_a application."""
    pt = _point(a, f.n_vars)
    s = f.degree()
    ell = Polynomial.linear_form(pt)
    return ExactMatrix([
        [-apply_power(ell, s - 2, apply_monomial(ei * ej, f)).constant_term() for ej in basis]
        for ei in basis
    ])


def q1_self(f: Polynomial, a: Sequence) -> Fraction:
    """Q^1(l_a, l_a) = -(l_a^s F)."""
    pt = _point(a, f.n_vars)
    ell = Polynomial.linear_form(pt)
    return -apply_power(ell, f.degree(), f).constant_term()


@dataclass
class SearchResult:
    strategy: str
    success: bool
    tried: int
    form: tuple[Fraction, ...] | None = None
    certificate: SLPCertificate | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "kind": "find-sle",
            "strategy": self.strategy,
            "success": self.success,
            "tried": self.tried,
            "form": _fmt_point(self.form) if self.form is not None else None,
            "certificate": self.certificate.to_json() if self.certificate else None,
            "reason": self.reason,
        }


def zero_one_vectors(n: int) -> Iterable[tuple[int, ...]]:
    """Nonzero 0/1 vectors by support size, supports in lexicographic order."""
    for w in range(1, n + 1):
        for support in combinations(range(n), w):
            s = set(support)
            yield tuple(int(i in s) for i in range(n))


def random_positive_point(rng: random.Random, n: int) -> tuple[Fraction, ...]:
    return tuple(rng.choice(POSITIVE_GRID) for _ in range(n))


def find_lefschetz_element(f: Polynomial, strategy: str = "exhaustive-01", seed: int = 0,
                           budget: int = 1000,
                           candidates: Iterable[Sequence] | None = None,
                           algebra: GorensteinAlgebra | None = None) -> SearchResult:
    """First candidate form passing :func:`slp_certify`.

    ``exhaustive-01`` walks ``candidates`` if given, else all 0/1 vectors;
    ``random-rational`` draws points from POSITIVE_GRID with ``seed``.
    Running out of budget gives an unsuccessful result, not an exception.
    """
    if budget < 1:
        raise CertificationError("budget must be at least 1")
    alg = _algebra(f, algebra)
    n = f.n_vars
    if strategy == "exhaustive-01":
        source = iter(candidates) if candidates is not None else zero_one_vectors(n)
    elif strategy == "random-rational":
        rng = random.Random(seed)
        source = (random_positive_point(rng, n) for _ in iter(int, 1))
    else:
        raise CertificationError(f"unknown strategy {strategy!r}")
    tried = 0
    for cand in source:
        if tried == budget:
            return SearchResult(strategy, False, tried, reason="budget exhausted")
        tried += 1
        pt = _point(cand, n)
        if not any(pt):
            continue
        cert = slp_certify(f, pt, alg)
        if cert.verdict:
            return SearchResult(strategy, True, tried, pt, cert)
    return SearchResult(strategy, False, tried, reason="candidates exhausted")


@dataclass
class PositiveOrthantCheck:
    """HRR at degree one sampled at seeded random positive points."""

    points: list[tuple[Fraction, ...]] = field(default_factory=list)
    certificates: list[HRRCertificate] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.verdict for c in self.certificates)


def hrr_degree1_sampled(f: Polynomial, n_points: int = 64, seed: int = 0,
                        algebra: GorensteinAlgebra | None = None) -> PositiveOrthantCheck:
    alg = _algebra(f, algebra)
    rng = random.Random(seed)
    out = PositiveOrthantCheck()
    for _ in range(n_points):
        pt = random_positive_point(rng, f.n_vars)
        out.points.append(pt)
        out.certificates.append(hrr_degree1(f, pt, alg))
    return out
