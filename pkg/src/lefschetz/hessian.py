"""Higher Hessian matrices (e_i e_j F) over a basis of A_k."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraError, monomial_basis
from .linalg import ExactMatrix
from .polynomial import Monomial, Polynomial, apply_monomial, as_fraction, evaluate


@dataclass(frozen=True)
class HessianMatrix:
    """Symbolic k-th Hessian; ``entries[i][j]`` has degree s - 2k."""

    degree: int
    basis: tuple[Monomial, ...]
    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def size(self) -> int:
        return len(self.basis)

    def at(self, point: Sequence) -> ExactMatrix:
        return ExactMatrix([[evaluate(p, point) for p in row] for row in self.entries])

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(n) for j in range(i + 1, n))

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": [list(m.indices()) for m in self.basis],
            "entries": [[p.format() for p in row] for row in self.entries],
        }


def _checked_basis(f: Polynomial, k: int, basis, check: bool) -> list[Monomial]:
    if basis is None:
        return monomial_basis(f, k)
    basis = list(basis)
    if check:
        monomial_basis(f, k, hint=basis)
    elif any(m.degree != k for m in basis):
        raise AlgebraError(f"basis elements must have degree {k}")
    return basis


def hessian(f: Polynomial, k: int, basis: Sequence[Monomial] | None = None,
            check: bool = True) -> HessianMatrix:
    """Symbolic k-th Hessian. For k = 0 this is the 1x1 matrix (F)."""
    basis = _checked_basis(f, k, basis, check)
    n = len(basis)
    grid: list[list[Polynomial | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            grid[i][j] = grid[j][i] = apply_monomial(basis[i] * basis[j], f)
    return HessianMatrix(k, tuple(basis), tuple(tuple(r) for r in grid))


def bracket_matrix(f: Polynomial, rows: Sequence[Monomial], cols: Sequence[Monomial],
                   point: Sequence) -> ExactMatrix:
    """Matrix of (r c F)(point), built without keeping the symbolic entries."""
    if len(point) != f.n_vars:
        raise ValueError(f"point has length {len(point)}, expected {f.n_vars}")
    pt = [as_fraction(x) for x in point]
    cache: dict[Monomial, object] = {}
    out = []
    for r in rows:
        line = []
        for c in cols:
            m = r * c
            if m not in cache:
                cache[m] = evaluate(apply_monomial(m, f), pt)
            line.append(cache[m])
        out.append(line)
    return ExactMatrix(out)


def hessian_at(f: Polynomial, k: int, basis: Sequence[Monomial] | None,
               point: Sequence, check: bool = False) -> ExactMatrix:
    basis = _checked_basis(f, k, basis, check)
    return bracket_matrix(f, basis, basis, point)


def mixed_hessian_at(f: Polynomial, lower: Sequence[Monomial], upper: Sequence[Monomial],
                     point: Sequence) -> ExactMatrix:
    """Rows index A_{k-1}, columns A_k.

    By Poincare duality its column null space is the primitive subspace
    Ker(x l^{s-2k+1}) of A_k, written in the ``upper`` basis.
    """
    return bracket_matrix(f, lower, upper, point)
