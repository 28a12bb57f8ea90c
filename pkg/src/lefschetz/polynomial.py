"""Sparse multivariate polynomials with exact rational coefficients.

The same type is used for polynomials in ``x_1..x_n`` and for differential
operators in ``d_1..d_n``; :func:`apply_operator` interprets the second as
acting on the first by partial differentiation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial, prod
from typing import Iterable, Mapping, Sequence


def as_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rational numbers")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(value: Fraction) -> str:
    """Serialize a rational as ``"p"`` or ``"p/q"``."""
    value = as_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Monomial:
    """Immutable monomial stored as sorted ``(variable, exponent)`` pairs.

    Variables are 1-based. Exponents are always positive; the empty tuple is
    the unit monomial.
    """

    __slots__ = ("exps", "degree", "_hash")

    def __init__(self, exps: Iterable[tuple[int, int]] = ()):
        merged: dict[int, int] = {}
        for var, e in exps:
            if var < 1:
                raise ValueError(f"variable index must be >= 1, got {var}")
            if e < 0:
                raise ValueError(f"negative exponent {e} for variable {var}")
            if e:
                merged[var] = merged.get(var, 0) + e
        self.exps = tuple(sorted(merged.items()))
        self.degree = sum(merged.values())
        self._hash = hash(self.exps)

    @classmethod
    def _raw(cls, exps: tuple[tuple[int, int], ...], degree: int) -> "Monomial":
        m = object.__new__(cls)
        m.exps = exps
        m.degree = degree
        m._hash = hash(exps)
        return m

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "Monomial":
        """Monomial from a multiset of variable indices, e.g. ``(1, 1, 3)``."""
        return cls((i, 1) for i in indices)

    @classmethod
    def from_dict(cls, exps: Mapping[int, int]) -> "Monomial":
        return cls(exps.items())

    def as_dict(self) -> dict[int, int]:
        return dict(self.exps)

    def indices(self) -> tuple[int, ...]:
        """Variable indices with repetition, ascending."""
        return tuple(v for v, e in self.exps for _ in range(e))

    def variables(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.exps)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.exps)

    def max_variable(self) -> int:
        return self.exps[-1][0] if self.exps else 0

    def sort_key(self) -> tuple:
        # degree first, then lex with variable 1 first and higher powers first
        return (self.degree, self.indices())

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other.exps:
            return self
        if not self.exps:
            return other
        merged = dict(self.exps)
        for v, e in other.exps:
            merged[v] = merged.get(v, 0) + e
        return Monomial._raw(tuple(sorted(merged.items())), self.degree + other.degree)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"Monomial({dict(self.exps)!r})"

    def format(self, symbol: str = "x") -> str:
        if not self.exps:
            return "1"
        parts = []
        for v, e in self.exps:
            parts.append(f"{symbol}{v}" if e == 1 else f"{symbol}{v}^{e}")
        return "*".join(parts)


ONE = Monomial()


def _differentiate(op: Monomial, mono: Monomial) -> tuple[int, Monomial] | None:
    """``d^op x^mono`` as ``(integer factor, monomial)``, or None if it vanishes."""
    if not op.exps:
        return 1, mono
    target = dict(mono.exps)
    factor = 1
    for v, a in op.exps:
        b = target.get(v, 0)
        if a > b:
            return None
        factor *= factorial(b) // factorial(b - a)
        if a == b:
            del target[v]
        else:
            target[v] = b - a
    return factor, Monomial._raw(tuple(sorted(target.items())), mono.degree - op.degree)


class Polynomial:
    """Exact sparse polynomial in ``n_vars`` variables.

    ``terms`` maps :class:`Monomial` to a nonzero :class:`Fraction`. Instances
    are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[Monomial, object] | None = None):
        if n_vars < 0:
            raise ValueError("n_vars must be nonnegative")
        self.n_vars = n_vars
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            if mono.max_variable() > n_vars:
                raise ValueError(
                    f"monomial {mono.format()} uses a variable beyond n_vars={n_vars}"
                )
            c = as_fraction(coef)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _from_clean(cls, n_vars: int, terms: dict[Monomial, Fraction]) -> "Polynomial":
        p = object.__new__(cls)
        p.n_vars = n_vars
        p.terms = terms
        return p

    # constructors

    @classmethod
    def zero(cls, n_vars: int) -> "Polynomial":
        return cls._from_clean(n_vars, {})

    @classmethod
    def constant(cls, value, n_vars: int) -> "Polynomial":
        return cls(n_vars, {ONE: value})

    @classmethod
    def variable(cls, i: int, n_vars: int) -> "Polynomial":
        return cls(n_vars, {Monomial([(i, 1)]): 1})

    @classmethod
    def monomial(cls, mono: Monomial, n_vars: int, coef=1) -> "Polynomial":
        return cls(n_vars, {mono: coef})

    @classmethod
    def linear_form(cls, a: Sequence) -> "Polynomial":
        """``a_1 d_1 + ... + a_n d_n`` (or the same linear polynomial in x)."""
        n = len(a)
        return cls(n, {Monomial([(i + 1, 1)]): c for i, c in enumerate(a)})

    # basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((m.degree for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self.terms}) <= 1

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(ONE, Fraction(0))

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    # arithmetic

    def _check(self, other: "Polynomial") -> None:
        if self.n_vars != other.n_vars:
            raise ValueError(
                f"mismatched n_vars: {self.n_vars} vs {other.n_vars}"
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._from_clean(self.n_vars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean(self.n_vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        c = as_fraction(c)
        if not c:
            return Polynomial.zero(self.n_vars)
        return Polynomial._from_clean(self.n_vars, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial._from_clean(self.n_vars, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(1, self.n_vars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.n_vars)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.n_vars, frozenset(self.terms.items())))

    def evaluate(self, point: Sequence) -> Fraction:
        return evaluate(self, point)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._from_clean(
            self.n_vars, {m: c for m, c in self.terms.items() if m.degree == d}
        )

    def substitute_zero(self, variables: Iterable[int]) -> "Polynomial":
        """Set the given variables to 0."""
        drop = set(variables)
        return Polynomial._from_clean(
            self.n_vars,
            {m: c for m, c in self.terms.items() if not drop.intersection(m.variables())},
        )

    def relabel(self, mapping: Mapping[int, int], n_vars: int) -> "Polynomial":
        """Rename variables by ``mapping`` (old index -> new index)."""
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = Monomial((mapping[v], e) for v, e in m.exps)
            out[nm] = out.get(nm, 0) + c
        return Polynomial(n_vars, out)

    # formatting / serialization

    def format(self, symbol: str = "x") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            body = m.format(symbol)
            if body == "1":
                pieces.append(fraction_str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{fraction_str(c)}*{body}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.n_vars}, {self.format()!r})"

    def to_json(self) -> dict:
        return {
            "n_vars": self.n_vars,
            "terms": [
                {"exps": {str(v): e for v, e in m.exps}, "coef": fraction_str(c)}
                for m, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        n = int(data["n_vars"])
        terms: dict[Monomial, Fraction] = {}
        for t in data["terms"]:
            m = Monomial((int(v), int(e)) for v, e in t["exps"].items())
            terms[m] = terms.get(m, Fraction(0)) + as_fraction(t["coef"])
        return cls(n, terms)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def apply_operator(op: Polynomial, f: Polynomial) -> Polynomial:
    """Apply the differential operator ``op`` (with ``d_i = d/dx_i``) to ``f``."""
    op._check(f)
    out: dict[Monomial, Fraction] = {}
    for om, oc in op.terms.items():
        for fm, fc in f.terms.items():
            hit = _differentiate(om, fm)
            if hit is None:
                continue
            factor, m = hit
            out[m] = out.get(m, 0) + oc * fc * factor
    return Polynomial._from_clean(f.n_vars, {m: c for m, c in out.items() if c})


def apply_monomial(op: Monomial, f: Polynomial) -> Polynomial:
    """``d^op f`` for a single operator monomial (hot path, no coefficient)."""
    out: dict[Monomial, Fraction] = {}
    for fm, fc in f.terms.items():
        hit = _differentiate(op, fm)
        if hit is not None:
            factor, m = hit
            out[m] = out.get(m, 0) + fc * factor
    return Polynomial._from_clean(f.n_vars, {m: c for m, c in out.items() if c})


def apply_power(ell: Polynomial, m: int, f: Polynomial) -> Polynomial:
    """``ell^m f`` computed as ``m`` successive applications of ``ell``."""
    for _ in range(m):
        if f.is_zero():
            break
        f = apply_operator(ell, f)
    return f


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    if len(point) != f.n_vars:
        raise ValueError(f"point has length {len(point)}, expected {f.n_vars}")
    pt = [as_fraction(x) for x in point]
    total = Fraction(0)
    for m, c in f.terms.items():
        total += c * prod((pt[v - 1] ** e for v, e in m.exps), start=Fraction(1))
    return total


def monomials_of_degree(n_vars: int, k: int, squarefree: bool = False) -> list[Monomial]:
    """All degree-``k`` monomials in canonical order (variable 1 first)."""
    gen = combinations if squarefree else combinations_with_replacement
    return [Monomial.from_indices(c) for c in gen(range(1, n_vars + 1), k)]


def operator(indices: Iterable[int], n_vars: int, coef=1) -> Polynomial:
    """Operator monomial ``coef * d_{i1} d_{i2} ...`` as a Polynomial."""
    return Polynomial.monomial(Monomial.from_indices(indices), n_vars, coef)
