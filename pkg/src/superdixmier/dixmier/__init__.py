"""Dixmier morphisms into factored Clifford-Weyl algebras."""

from .morphism import (
    DixmierMorphism,
    Step,
    build_dixmier,
    even_part_ideal_check,
    kernel_slice,
    member,
    pq_formula,
    validate_step_images,
)
from .target import CliffordFactor, MatrixFactor, TargetAlgebra, TargetElement, WeylFactor

__all__ = [
    "DixmierMorphism",
    "Step",
    "build_dixmier",
    "even_part_ideal_check",
    "kernel_slice",
    "member",
    "pq_formula",
    "validate_step_images",
    "CliffordFactor",
    "MatrixFactor",
    "TargetAlgebra",
    "TargetElement",
    "WeylFactor",
]
