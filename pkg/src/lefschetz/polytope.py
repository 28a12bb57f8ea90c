"""Face posets of polyhedra and their face polynomials."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from .polynomial import Monomial, Polynomial


class PosetError(ValueError):
    pass


@dataclass(frozen=True)
class FacePoset:
    """Vertex count plus faces given as sets of 1-based vertex ids.

    Edges are not stored; see :func:`derive_edges`.
    """

    name: str
    n_vertices: int
    faces: tuple[frozenset[int], ...]
    polyhedron: bool = True

    @classmethod
    def from_lists(cls, name: str, n_vertices: int, faces: Iterable[Iterable[int]],
                   polyhedron: bool = True) -> "FacePoset":
        return cls(name, n_vertices, tuple(frozenset(f) for f in faces), polyhedron)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def face_sizes(self) -> set[int]:
        return {len(f) for f in self.faces}

    def is_regular(self) -> bool:
        return len(self.face_sizes()) == 1

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n_vertices": self.n_vertices,
            "faces": [sorted(f) for f in self.faces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FacePoset":
        try:
            return cls.from_lists(
                str(data.get("name", "custom")),
                int(data["n_vertices"]),
                [[int(v) for v in f] for f in data["faces"]],
                bool(data.get("polyhedron", True)),
            )
        except (KeyError, TypeError) as exc:
            raise PosetError(f"malformed poset JSON: {exc}") from exc


# Face lists with the vertex labels used for the five Platonic solids.
_BUILTIN_FACES: dict[str, tuple[int, list[list[int]]]] = {
    "tetrahedron": (4, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]),
    "hexahedron": (8, [
        [1, 2, 3, 4], [2, 3, 6, 7], [3, 4, 7, 8],
        [1, 4, 5, 8], [1, 2, 5, 6], [5, 6, 7, 8],
    ]),
    "octahedron": (6, [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 2, 5],
        [2, 3, 6], [3, 4, 6], [4, 5, 6], [2, 5, 6],
    ]),
    "dodecahedron": (20, [
        [1, 2, 3, 4, 5], [1, 2, 6, 7, 19], [2, 3, 7, 8, 20], [3, 4, 8, 9, 16],
        [4, 5, 9, 10, 17], [1, 5, 6, 10, 18], [11, 12, 13, 14, 15],
        [11, 12, 16, 17, 9], [12, 13, 17, 18, 10], [13, 14, 18, 19, 6],
        [14, 15, 19, 20, 7], [11, 15, 16, 20, 8],
    ]),
    "icosahedron": (12, [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [3, 4, 9], [1, 5, 6],
        [1, 2, 6], [2, 3, 8], [3, 8, 9], [2, 6, 7], [2, 7, 8],
        [10, 11, 12], [4, 5, 10], [4, 9, 10], [5, 6, 11], [5, 10, 11],
        [9, 10, 12], [8, 9, 12], [6, 7, 11], [7, 11, 12], [7, 8, 12],
    ]),
}

BUILTIN_NAMES = tuple(_BUILTIN_FACES)


def builtin(name: str) -> FacePoset:
    try:
        n, faces = _BUILTIN_FACES[name.lower()]
    except KeyError:
        raise PosetError(
            f"unknown polyhedron {name!r}; expected one of {', '.join(BUILTIN_NAMES)}"
        ) from None
    return FacePoset.from_lists(name.lower(), n, faces)


def load_poset(source: str | Path) -> FacePoset:
    """Builtin name or path to a JSON poset file."""
    if isinstance(source, str) and source.lower() in _BUILTIN_FACES:
        return builtin(source)
    path = Path(source)
    if not path.exists():
        raise PosetError(f"{source!r} is neither a builtin polyhedron nor a file")
    return FacePoset.from_json(json.loads(path.read_text()))


def derive_edges(poset: FacePoset) -> list[tuple[int, int]]:
    """Vertex pairs lying in exactly two faces."""
    counts: Counter[tuple[int, int]] = Counter()
    for f in poset.faces:
        counts.update(combinations(sorted(f), 2))
    return sorted(pair for pair, c in counts.items() if c == 2)


@dataclass
class ValidationReport:
    ok: bool
    violations: list[str] = field(default_factory=list)
    n_vertices: int = 0
    n_edges: int = 0
    n_faces: int = 0
    euler_characteristic: int | None = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": self.violations,
            "V": self.n_vertices,
            "E": self.n_edges,
            "F": self.n_faces,
            "euler_characteristic": self.euler_characteristic,
        }


def validate(poset: FacePoset, regular: bool | None = None) -> ValidationReport:
    """Check the combinatorial invariants; Euler's relation for polyhedra.

    ``regular`` defaults to ``poset.polyhedron`` and requires equal face sizes.
    """
    problems: list[str] = []
    n = poset.n_vertices
    if n < 1:
        problems.append(f"n_vertices must be positive, got {n}")
    seen: set[frozenset[int]] = set()
    used: set[int] = set()
    for idx, f in enumerate(poset.faces):
        if not f:
            problems.append(f"face {idx} is empty")
        bad = sorted(v for v in f if not 1 <= v <= n)
        if bad:
            problems.append(f"face {idx} has vertex ids out of range: {bad}")
        if f in seen:
            problems.append(f"duplicate face {sorted(f)}")
        seen.add(f)
        used.update(f)
    missing = sorted(set(range(1, n + 1)) - used)
    if missing:
        problems.append(f"vertices in no face: {missing}")
    if regular is None:
        regular = poset.polyhedron
    if regular and len(poset.face_sizes()) > 1:
        problems.append(f"faces have differing sizes {sorted(poset.face_sizes())}")

    edges = derive_edges(poset)
    chi = None
    if poset.polyhedron:
        chi = n - len(edges) + len(poset.faces)
        if chi != 2:
            problems.append(f"Euler characteristic V-E+F = {chi}, expected 2")
    return ValidationReport(
        ok=not problems,
        violations=problems,
        n_vertices=n,
        n_edges=len(edges),
        n_faces=len(poset.faces),
        euler_characteristic=chi,
    )


def face_polynomial(poset: FacePoset) -> Polynomial:
    """Sum over faces of the product of the face's vertex variables."""
    report = validate(poset, regular=False)
    structural = [v for v in report.violations if not v.startswith("Euler")]
    if structural:
        raise PosetError("invalid poset: " + "; ".join(structural))
    n = poset.n_vertices
    return Polynomial(n, {Monomial((v, 1) for v in f): 1 for f in poset.faces})


def face_point(poset: FacePoset, zeros: Iterable[int] = ()) -> list[int]:
    """All-ones evaluation point with the listed (1-based) coordinates set to 0."""
    z = set(zeros)
    return [0 if i in z else 1 for i in range(1, poset.n_vertices + 1)]

