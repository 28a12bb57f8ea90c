"""Dense univariate polynomials over Q, coefficients stored low degree first.

Only what characteristic polynomials and Sturm counting need.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as gcd_int, lcm as lcm_int
from typing import Sequence

Poly = list[Fraction]


def trim(p: Sequence) -> Poly:
    q = [Fraction(c) for c in p]
    while q and q[-1] == 0:
        q.pop()
    return q


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def scale(p: Poly, c) -> Poly:
    return trim([c * x for x in p])


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p: Poly, k: int) -> Poly:
    out: Poly = [Fraction(1)]
    for _ in range(k):
        out = mul(out, p)
    return out


def divmod_(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(p)
    quot = [Fraction(0)] * max(len(r) - len(q) + 1, 0)
    lead = q[-1]
    while len(r) >= len(q):
        c = r[-1] / lead
        shift = len(r) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            r[i + shift] -= c * b
        r = trim(r)
    return trim(quot), r


def monic(p: Poly) -> Poly:
    p = trim(p)
    return [c / p[-1] for c in p] if p else p


def derivative(p: Poly) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def gcd(p: Poly, q: Poly) -> Poly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def from_high(coeffs: Sequence) -> Poly:
    """Build from coefficients listed highest degree first."""
    return trim(list(reversed([Fraction(c) for c in coeffs])))


def to_high(p: Poly) -> list[Fraction]:
    return list(reversed(p))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _primitive(p: list[int]) -> list[int]:
    g = 0
    for c in p:
        g = gcd_int(g, c)
    return [c // g for c in p] if g > 1 else p


def integer_primitive(p: Poly) -> list[int]:
    """Positive rational multiple of ``p`` with coprime integer coefficients."""
    p = trim(p)
    den = 1
    for c in p:
        den = lcm_int(den, c.denominator)
    return _primitive([int(c * den) for c in p])


def _trim_int(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _signed_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b, scaled by a positive factor only."""
    r = list(a)
    lead = b[-1]
    mult = abs(lead)
    sgn = 1 if lead > 0 else -1
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        # r <- |lead| r - sgn c x^shift b  kills the leading term
        r = [mult * x for x in r]
        for i, y in enumerate(b):
            r[i + shift] -= sgn * c * y
        r = _trim_int(r)
    return r


def _derivative_int(p: list[int]) -> list[int]:
    return _trim_int([i * p[i] for i in range(1, len(p))])


def sturm_sequence(p: Poly) -> list[list[int]]:
    """Integer Sturm sequence; every member is a positive multiple of the
    classical one, so sign variations are unchanged. The last member is
    gcd(p, p') up to a constant."""
    seq = [integer_primitive(p)]
    d = _primitive(_derivative_int(seq[0]))
    if not d:
        return seq
    seq.append(d)
    while True:
        r = _signed_prem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_primitive([-c for c in r]))
    return seq


def _variations(signs: list[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _signs_at(seq, where: str) -> list[int]:
    if where == "+inf":
        return [_sign(q[-1]) for q in seq]
    if where == "-inf":
        return [_sign(q[-1]) * (-1) ** (len(q) - 1) for q in seq]
    return [_sign(q[0]) for q in seq]  # at zero


def _count(seq) -> tuple[int, int]:
    at_zero = _variations(_signs_at(seq, "0"))
    pos = at_zero - _variations(_signs_at(seq, "+inf"))
    neg = _variations(_signs_at(seq, "-inf")) - at_zero
    return pos, neg


def distinct_sign_roots(p: Poly) -> tuple[int, int]:
    """Distinct real roots in (0, inf) and (-inf, 0). Requires p(0) != 0."""
    p = trim(p)
    if not p[0]:
        raise ValueError("polynomial vanishes at 0")
    return _count(sturm_sequence(p))


def sign_root_counts(p: Poly) -> tuple[int, int, int]:
    """Real roots of ``p`` counted with multiplicity: (positive, negative, zero).

    Multiplicities come from the chain ``g, gcd(g, g'), ...``: a root of
    multiplicity m is a distinct root of the first m members. The gcd is the
    last member of each Sturm sequence.
    """
    p = trim(p)
    zero = 0
    while p and p[0] == 0:
        p = p[1:]
        zero += 1
    pos = neg = 0
    g: Poly = p
    while degree(g) > 0:
        seq = sturm_sequence(g)
        dp, dn = _count(seq)
        pos += dp
        neg += dn
        g = [Fraction(c) for c in seq[-1]]
    return pos, neg, zero
