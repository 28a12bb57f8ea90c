"""Graded pieces of A = Q[d_1..d_n] / Ann(F) via catalecticant linear algebra.

Everything here works degree by degree: A_k is identified with the span of
the derivatives ``d^alpha F`` for ``|alpha| = k``, so h_k is a rank and a
basis of A_k is a set of operator monomials with independent images.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

from . import linalg
from .polynomial import (
    Monomial,
    Polynomial,
    apply_monomial,
    apply_operator,
    monomials_of_degree,
    operator,
)


class AlgebraError(ValueError):
    pass


class _Echelon:
    """Incremental fraction-free row echelon form over sparse integer rows.

    Rows are dicts ``column key -> int``; the pivot of a row is its smallest
    key. Used to grow an independent set one candidate at a time.
    """

    def __init__(self):
        self.pivots: dict = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            lead = min(row)
            prow = self.pivots.get(lead)
            if prow is None:
                return row
            p, f = prow[lead], row[lead]
            out = {k: p * v for k, v in row.items()}
            for k, v in prow.items():
                nv = out.get(k, 0) - f * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            g = 0
            for v in out.values():
                g = gcd(g, v)
            row = {k: v // g for k, v in out.items()} if g > 1 else out
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; True iff it was independent of the rows so far."""
        r = self.reduce(row)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def _integer_row(p: Polynomial) -> dict:
    """Image polynomial as a sparse integer row keyed by monomial order."""
    if not p.terms:
        return {}
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return {m.sort_key(): int(c * den) for m, c in p.terms.items()}


def _check_form(f: Polynomial) -> int:
    if f.is_zero():
        raise AlgebraError("F must be nonzero")
    if not f.is_homogeneous():
        raise AlgebraError("F must be homogeneous")
    return f.degree()


def _divisor_count(f: Polynomial, d: int) -> int:
    """Number of degree-d monomials dividing some term of f (bounds h_{s-d})."""
    seen: set[tuple] = set()
    for m in f.terms:
        idx = m.indices()
        seen.update(_sub_multisets(idx, d))
    return len(seen)


def _sub_multisets(idx: tuple[int, ...], d: int) -> set[tuple]:
    return set(combinations(idx, d))


def candidates(f: Polynomial, k: int, squarefree: bool = False) -> list[Monomial]:
    return monomials_of_degree(f.n_vars, k, squarefree=squarefree)


@dataclass
class CatalecticantMatrix:
    degree: int
    row_labels: list[Monomial]
    col_labels: list[Monomial]
    matrix: linalg.ExactMatrix

    def rank(self) -> int:
        return linalg.rank(self.matrix)


def catalecticant(f: Polynomial, k: int, squarefree: bool = False) -> CatalecticantMatrix:
    """Coefficient matrix of ``d^alpha F`` (rows) over degree s-k monomials (columns)."""
    s = _check_form(f)
    if not 0 <= k <= s:
        raise AlgebraError(f"degree {k} outside 0..{s}")
    rows = candidates(f, k, squarefree)
    images = [apply_monomial(m, f) for m in rows]
    cols = sorted({m for im in images for m in im.terms}, key=Monomial.sort_key)
    mat = linalg.ExactMatrix([[im.coefficient(c) for c in cols] for im in images])
    return CatalecticantMatrix(k, rows, cols, mat)


def _greedy(f: Polynomial, k: int, squarefree: bool = False,
            limit: int | None = None) -> list[Monomial]:
    ech = _Echelon()
    chosen = []
    for m in candidates(f, k, squarefree):
        im = apply_monomial(m, f)
        if im.terms and ech.add(_integer_row(im)):
            chosen.append(m)
            if limit is not None and len(chosen) == limit:
                break
    return chosen


def degree_rank(f: Polynomial, k: int, squarefree: bool = False) -> int:
    """h_k as the rank of the degree-k catalecticant."""
    s = _check_form(f)
    if not 0 <= k <= s:
        return 0
    return len(_greedy(f, k, squarefree, limit=_divisor_count(f, s - k)))


def hilbert_function(f: Polynomial, squarefree: bool = False) -> tuple[int, ...]:
    s = _check_form(f)
    return tuple(degree_rank(f, k, squarefree) for k in range(s + 1))


def images_independent(f: Polynomial, basis: Sequence[Monomial]) -> bool:
    ech = _Echelon()
    return all(ech.add(_integer_row(apply_monomial(m, f))) for m in basis)


def monomial_basis(f: Polynomial, k: int, hint: Sequence[Monomial] | None = None,
                   squarefree: bool = False) -> list[Monomial]:
    """A basis of A_k made of operator monomials.

    With ``hint`` the given list is verified (right size, independent images)
    and returned unchanged; otherwise candidates are scanned in canonical
    order and kept when they raise the rank.
    """
    s = _check_form(f)
    if not 0 <= k <= s:
        raise AlgebraError(f"degree {k} outside 0..{s}")
    if hint is None:
        return _greedy(f, k, squarefree, limit=_divisor_count(f, s - k))
    hint = list(hint)
    if any(m.degree != k for m in hint):
        raise AlgebraError(f"hint contains monomials not of degree {k}")
    h = degree_rank(f, k)
    if len(hint) != h:
        raise AlgebraError(f"hint has {len(hint)} elements but h_{k} = {h}")
    if not images_independent(f, hint):
        raise AlgebraError("hint monomials have dependent images in A_k")
    return hint


def annihilator_membership(op: Polynomial, f: Polynomial) -> bool:
    return apply_operator(op, f).is_zero()


@dataclass
class AnnihilatorKernel:
    degree: int
    candidates: list[Monomial]
    vectors: list[list[Fraction]]

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def as_operators(self, n_vars: int) -> list[Polynomial]:
        return [
            Polynomial(n_vars, {m: c for m, c in zip(self.candidates, v) if c})
            for v in self.vectors
        ]

    def vector_of(self, op: Polynomial) -> list[Fraction]:
        index = {m: i for i, m in enumerate(self.candidates)}
        v = [Fraction(0)] * len(self.candidates)
        for m, c in op.terms.items():
            if m not in index:
                raise AlgebraError(f"{m.format('d')} is not a degree-{self.degree} candidate")
            v[index[m]] = c
        return v

    def contains(self, op: Polynomial) -> bool:
        """Is ``op`` in the span of the kernel vectors?"""
        v = self.vector_of(op)
        base = linalg.rank(self.vectors) if self.vectors else 0
        return linalg.rank(self.vectors + [v]) == base


def annihilator_kernel(f: Polynomial, k: int, squarefree: bool = False) -> AnnihilatorKernel:
    """Null space of the degree-k catalecticant: the degree-k part of Ann(F)."""
    cat = catalecticant(f, k, squarefree)
    if cat.col_labels:
        vectors = linalg.kernel(cat.matrix.T)
    else:
        n = len(cat.row_labels)
        vectors = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return AnnihilatorKernel(k, cat.row_labels, vectors)


OCTAHEDRON_GENERATORS = (
    ((1,), (6,)), ((2,), (4,)), ((3,), (5,)),
    ((1, 1), None), ((2, 2), None), ((3, 3), None),
)


def octahedron_generators(n_vars: int = 6) -> list[Polynomial]:
    """d1-d6, d2-d4, d3-d5, d1^2, d2^2, d3^2."""
    gens = []
    for plus, minus in OCTAHEDRON_GENERATORS:
        g = operator(plus, n_vars)
        if minus is not None:
            g = g - operator(minus, n_vars)
        gens.append(g)
    return gens


def verify_octahedron_reduction(f: Polynomial) -> bool:
    """A_F is isomorphic to Q[t1,t2,t3]/(t1^2,t2^2,t3^2) via d1,d6->t1; d2,d4->t2; d3,d5->t3.

    Checked by (i) every listed generator annihilating F and (ii) the
    Hilbert function matching the complete intersection's, (1,3,3,1).
    """
    if f.n_vars < 6 or f.is_zero() or not f.is_homogeneous():
        return False
    if not all(annihilator_membership(g, f) for g in octahedron_generators(f.n_vars)):
        return False
    target = tuple(comb(3, k) for k in range(4))
    return hilbert_function(f) == target


def collapse_variables(f: Polynomial) -> tuple[Polynomial, list[list[int]]]:
    """Rewrite F in fewer variables when Ann(F)_1 is spanned by differences d_i - d_j.

    Returns the reduced form (representatives renumbered 1..g) and the
    variable groups. Raises if the degree-1 annihilator is not of that shape.
    """
    n = f.n_vars
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    firsts = [apply_monomial(Monomial([(i, 1)]), f) for i in range(1, n + 1)]
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if firsts[i - 1] == firsts[j - 1]:
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), []).append(i)
    ordered = sorted(groups.values())
    if len(ordered) != degree_rank(f, 1):
        raise AlgebraError("degree-1 annihilator is not spanned by variable differences")
    reps = [g[0] for g in ordered]
    drop = [v for g in ordered for v in g[1:]]
    reduced = f.substitute_zero(drop).relabel({r: i + 1 for i, r in enumerate(reps)}, len(reps))
    return reduced, ordered


def pairing_matrix(f: Polynomial, left: Sequence[Monomial],
                   right: Sequence[Monomial]) -> linalg.ExactMatrix:
    """Poincare pairing: constant term of ``e_i e_j F`` for e_i in A_k, e_j in A_{s-k}."""
    return linalg.ExactMatrix(
        [[apply_monomial(a * b, f).constant_term() for b in right] for a in left]
    )


@dataclass
class GorensteinAlgebra:
    """A_F with lazily computed, cached bases per degree.

    ``hints`` maps a degree to an explicit basis that is verified then used
    in place of the greedy choice.
    """

    form: Polynomial
    hints: dict[int, list[Monomial]] = field(default_factory=dict)
    _bases: dict[int, list[Monomial]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.socle_degree = _check_form(self.form)

    @property
    def n_vars(self) -> int:
        return self.form.n_vars

    def basis(self, k: int) -> list[Monomial]:
        if k not in self._bases:
            self._bases[k] = monomial_basis(self.form, k, hint=self.hints.get(k))
        return self._bases[k]

    def h(self, k: int) -> int:
        return len(self.basis(k))

    def hilbert(self) -> tuple[int, ...]:
        return tuple(self.h(k) for k in range(self.socle_degree + 1))

    def graded_basis(self) -> "GradedBasis":
        s = self.socle_degree
        bases = [self.basis(k) for k in range(s + 1)]
        return GradedBasis(s, bases, tuple(len(b) for b in bases))


@dataclass
class GradedBasis:
    socle_degree: int
    bases: list[list[Monomial]]
    h: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "socle_degree": self.socle_degree,
            "hilbert": list(self.h),
            "bases": [[list(m.indices()) for m in b] for b in self.bases],
        }


def parse_basis(items: Iterable[Iterable[int]]) -> list[Monomial]:
    """Operator monomials from index lists, e.g. ``[[1, 3], [2, 4]]``."""
    return [Monomial.from_indices(int(i) for i in it) for it in items]
