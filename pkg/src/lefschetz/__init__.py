"""Exact computations in Artinian Gorenstein algebras of polyhedral face posets.

Build the face polynomial of a polyhedron, compute the Hilbert function and
higher Hessians of Q[d]/Ann(F), and certify the strong Lefschetz property and
Hodge-Riemann relations at chosen linear forms, all in exact arithmetic.
"""

from .algebra import (
    GorensteinAlgebra,
    annihilator_kernel,
    annihilator_membership,
    hilbert_function,
    monomial_basis,
    verify_octahedron_reduction,
)
from .hessian import hessian, hessian_at, mixed_hessian_at
from .lefschetz import (
    find_lefschetz_element,
    hrr_at_degree,
    hrr_degree1,
    slp_certify,
)
from .linalg import (
    ExactMatrix,
    SpectrumClaim,
    charpoly,
    determinant,
    kernel,
    rank,
    signature,
    verify_spectrum,
)
from .polynomial import Monomial, Polynomial, apply_operator, evaluate
from .polytope import FacePoset, builtin, derive_edges, face_polynomial, validate

__version__ = "0.1.0"
