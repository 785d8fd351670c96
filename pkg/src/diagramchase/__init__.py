"""Exact diagram chasing over fields.

Commutative grids of finite-dimensional vector spaces with exact rows and
columns, kernel/cokernel complex comparisons with explicit connecting
isomorphisms, the snake lemma, and quiver Hom-grid applications.
"""

from .errors import (
    ChaseError,
    DimensionMismatch,
    FormatError,
    HypothesisFailure,
    InputError,
    NotAComplex,
    NotInduced,
    RegionMissing,
    TheoremViolation,
)
from .fields import QQ, Field, PrimeField, RationalField
from .linalg import (
    LinearMap,
    QuotientSpace,
    Subspace,
    cokernel,
    image,
    induced_map,
    kernel,
    matrix_inverse,
    quotient,
    quotient_map,
    rank,
    rref,
    solve,
)

__all__ = [
    "ChaseError", "DimensionMismatch", "FormatError", "HypothesisFailure",
    "InputError", "NotAComplex", "NotInduced", "RegionMissing",
    "TheoremViolation",
    "QQ", "Field", "PrimeField", "RationalField",
    "LinearMap", "QuotientSpace", "Subspace", "cokernel", "image",
    "induced_map", "kernel", "matrix_inverse", "quotient", "quotient_map",
    "rank", "rref", "solve",
]

__version__ = "0.1.0"
