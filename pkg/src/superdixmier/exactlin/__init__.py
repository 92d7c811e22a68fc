"""Exact scalars and super linear algebra."""

from .scalars import QQ, Surd, Tower, adjoin_sqrt, as_scalar, format_scalar, sqrt_in
from .linalg import Span, nullspace, rref, solve
from .graded import (
    DimensionMismatch,
    EvenBilinearForm,
    GradedSubspace,
    SuperDim,
    find_isotropic_vector,
    is_maximal_isotropic,
    is_totally_isotropic,
    perp,
    vector_parity,
)

__all__ = [
    "QQ",
    "Surd",
    "Tower",
    "adjoin_sqrt",
    "as_scalar",
    "format_scalar",
    "sqrt_in",
    "Span",
    "nullspace",
    "rref",
    "solve",
    "DimensionMismatch",
    "EvenBilinearForm",
    "GradedSubspace",
    "SuperDim",
    "find_isotropic_vector",
    "is_maximal_isotropic",
    "is_totally_isotropic",
    "perp",
    "vector_parity",
]
