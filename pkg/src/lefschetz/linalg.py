"""Exact dense linear algebra over the rationals.

Determinants and ranks use fraction-free (Bareiss) elimination on the
integer matrix obtained by clearing row denominators. Characteristic
polynomials come from a Hessenberg reduction, with Faddeev-LeVerrier as a
second route. Inertia is computed by symmetric congruence reduction or by
Sturm counting on the characteristic polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import univariate as up
from .polynomial import as_fraction, fraction_str

# Above this size the Sturm route (which needs a charpoly) is skipped unless forced.
CHARPOLY_LIMIT = 64


class LinalgError(ValueError):
    pass


class ExactMatrix:
    """Immutable rectangular matrix of Fractions."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(as_fraction(x) for x in r) for r in rows)
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise LinalgError("ragged matrix rows")
        self.rows = data
        self.nrows = len(data)
        self.ncols = widths.pop() if widths else 0

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "ExactMatrix":
        return cls([[0] * c for _ in range(r)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows)) if self.nrows else ExactMatrix([])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = list(zip(*other.rows))
        return ExactMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows]
        )

    def scale(self, c) -> "ExactMatrix":
        c = as_fraction(c)
        return ExactMatrix([[c * x for x in r] for r in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i + 1, self.ncols)
        )

    def trace(self) -> Fraction:
        if not self.is_square():
            raise LinalgError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Fraction(0))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def to_json(self) -> list[list[str]]:
        return [[fraction_str(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "ExactMatrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise LinalgError("matrix JSON must be an array of arrays")
        return cls(data)

    def __repr__(self) -> str:
        return f"ExactMatrix({self.to_json()!r})"


def _as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def _integer_rows(m: ExactMatrix) -> tuple[list[list[int]], int]:
    """Rows scaled to integers, plus the product of the row scale factors."""
    rows, total = [], 1
    for r in m.rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        rows.append([int(x * d) for x in r])
        total *= d
    return rows, total


def _bareiss(rows: list[list[int]], stop_on_singular: bool = False) -> tuple[int, int, int]:
    """In-place fraction-free elimination.

    Returns ``(rank, last_pivot, sign)``; for a nonsingular square input the
    last pivot times ``sign`` is the determinant.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    prev = 1
    sign = 1
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if rows[i][c]), None)
        if piv is None:
            if stop_on_singular:
                return r, 0, sign
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nr):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(p * row[j] - f * prow[j]) // prev for j in range(nc)]
            else:
                rows[i] = [(p * row[j]) // prev for j in range(nc)]
        prev = p
        r += 1
    return r, prev, sign


def determinant(m) -> Fraction:
    m = _as_matrix(m)
    if not m.is_square():
        raise LinalgError(f"determinant of non-square {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return Fraction(1)
    rows, scale = _integer_rows(m)
    r, last, sign = _bareiss(rows, stop_on_singular=True)
    if r < n:
        return Fraction(0)
    return Fraction(sign * last, scale)


def rank(m) -> int:
    m = _as_matrix(m)
    if not m.nrows or not m.ncols:
        return 0
    rows, _ = _integer_rows(m)
    return _bareiss(rows)[0]


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    m = _as_matrix(m)
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel(m) -> list[list[Fraction]]:
    """Basis of the right null space ``{v : m v = 0}``."""
    m = _as_matrix(m)
    nc = m.ncols
    reduced, pivots = rref(m)
    free = [c for c in range(nc) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * nc
        v[f] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(m, b: Sequence) -> list[Fraction] | None:
    """One solution of ``m x = b`` or None when inconsistent."""
    m = _as_matrix(m)
    aug = ExactMatrix([list(r) + [as_fraction(x)] for r, x in zip(m.rows, b)])
    reduced, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [Fraction(0)] * m.ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[-1]
    return x


# characteristic polynomials


def hessenberg(m) -> list[list[Fraction]]:
    """Upper Hessenberg matrix similar to ``m`` (exact Gaussian similarity)."""
    m = _as_matrix(m)
    n = m.nrows
    a = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if a[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            a[j + 1], a[piv] = a[piv], a[j + 1]
            for r in a:
                r[j + 1], r[piv] = r[piv], r[j + 1]
        p = a[j + 1][j]
        for i in range(j + 2, n):
            if a[i][j]:
                u = a[i][j] / p
                ri, rp = a[i], a[j + 1]
                for k in range(n):
                    ri[k] -= u * rp[k]
                for r in a:
                    r[j + 1] += u * r[i]
    return a


def charpoly(m) -> list[Fraction]:
    """Monic characteristic polynomial det(xI - m), coefficients low degree first."""
    m = _as_matrix(m)
    if not m.is_square():
        raise LinalgError(f"charpoly of non-square {m.shape} matrix")
    h = hessenberg(m)
    n = m.nrows
    p: list[up.Poly] = [[Fraction(1)]]
    for k in range(1, n + 1):
        cur = up.mul([-h[k - 1][k - 1], Fraction(1)], p[k - 1])
        t = Fraction(1)
        for i in range(k - 1, 0, -1):
            t *= h[i][i - 1]
            if not t:
                break
            cur = up.sub(cur, up.scale(p[i - 1], h[i - 1][k - 1] * t))
        p.append(cur)
    return p[n]


def charpoly_faddeev(m) -> list[Fraction]:
    """Faddeev-LeVerrier route, low degree first. O(n^4); meant for n <= 20."""
    m = _as_matrix(m)
    if not m.is_square():
        raise LinalgError(f"charpoly of non-square {m.shape} matrix")
    n = m.nrows
    a = [list(r) for r in m.rows]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # M_k = A M_{k-1} + c I
        prod_ = [[sum((a[i][t] * mk[t][j] for t in range(n)), Fraction(0)) for j in range(n)]
                 for i in range(n)]
        for i in range(n):
            prod_[i][i] += c_prev
        mk = prod_
        tr = sum((sum((a[i][t] * mk[t][i] for t in range(n)), Fraction(0)) for i in range(n)),
                 Fraction(0))
        coeffs[n - k] = -tr / k
    return coeffs


# inertia


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return self.n_plus, self.n_minus, self.n_zero

    def to_json(self) -> list[int]:
        return list(self.as_tuple())


def _require_symmetric(m: ExactMatrix) -> None:
    if not m.is_symmetric():
        raise LinalgError("signature requires a symmetric matrix")


def signature_congruence(m) -> Inertia:
    """Inertia by symmetric Gaussian elimination (a congruence transform).

    A zero diagonal with a nonzero off-diagonal entry a_ij is handled by
    adding row/column j to row/column i, which puts 2 a_ij on the diagonal.
    """
    m = _as_matrix(m)
    _require_symmetric(m)
    n = m.nrows
    a = [list(r) for r in m.rows]
    active = list(range(n))
    pos = neg = 0
    while active:
        i = next((k for k in active if a[k][k]), None)
        if i is None:
            pair = next(((k, l) for k in active for l in active if a[k][l]), None)
            if pair is None:
                break
            i, j = pair
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
        d = a[i][i]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        ri = a[i]
        for k in active:
            f = a[k][i]
            if f:
                f = f / d
                rk = a[k]
                for l in active:
                    if ri[l]:
                        rk[l] -= f * ri[l]
    return Inertia(pos, neg, n - pos - neg)


def signature_sturm(m) -> Inertia:
    """Inertia by counting signed real roots of the characteristic polynomial."""
    m = _as_matrix(m)
    _require_symmetric(m)
    pos, neg, zero = up.sign_root_counts(charpoly(m))
    if pos + neg + zero != m.nrows:
        raise LinalgError("characteristic polynomial is not real-rooted")
    return Inertia(pos, neg, zero)


def signature(m, method: str = "congruence", force: bool = False) -> Inertia:
    """``method`` is ``congruence``, ``sturm`` or ``both`` (which cross-checks)."""
    m = _as_matrix(m)
    if method == "congruence":
        return signature_congruence(m)
    if method == "sturm":
        return signature_sturm(m)
    if method == "both":
        a = signature_congruence(m)
        if m.nrows > CHARPOLY_LIMIT and not force:
            return a
        b = signature_sturm(m)
        if a != b:
            raise LinalgError(f"signature mismatch: congruence {a} vs sturm {b}")
        return a
    raise ValueError(f"unknown signature method {method!r}")


# spectrum claims


@dataclass(frozen=True)
class SpectrumClaim:
    """Claimed factorization of a characteristic polynomial.

    Each factor is a monic integer polynomial given highest degree first,
    e.g. ``(1, 0, -20)`` for x^2 - 20, paired with its multiplicity.
    """

    factors: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def of(cls, *factors) -> "SpectrumClaim":
        return cls(tuple((tuple(int(c) for c in f), int(mult)) for f, mult in factors))

    def dimension(self) -> int:
        return sum((len(f) - 1) * mult for f, mult in self.factors)

    def product(self) -> list[Fraction]:
        out: up.Poly = [Fraction(1)]
        for f, mult in self.factors:
            out = up.mul(out, up.power(up.from_high(f), mult))
        return out

    def to_json(self) -> list:
        return [[list(f), mult] for f, mult in self.factors]

    @classmethod
    def from_json(cls, data) -> "SpectrumClaim":
        return cls.of(*[(f, mult) for f, mult in data])


def verify_spectrum(m, claim: SpectrumClaim) -> bool:
    m = _as_matrix(m)
    if not m.is_square():
        raise LinalgError("spectrum of a non-square matrix")
    if claim.dimension() != m.nrows:
        raise LinalgError(
            f"claim has total degree {claim.dimension()}, matrix dimension is {m.nrows}"
        )
    for f, _ in claim.factors:
        if not f or f[0] != 1:
            raise LinalgError(f"claim factor {list(f)} is not monic")
    return up.trim(charpoly(m)) == up.trim(claim.product())


def charpoly_str(coeffs: Sequence[Fraction], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = fraction_str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{fraction_str(abs(c))}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out
