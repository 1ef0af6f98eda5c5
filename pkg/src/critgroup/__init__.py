"""Exact critical groups of structured multigraphs and a checker for closed-form group formulas."""

from .exactlin import (
    AbelianGroup,
    IntMatrix,
    MatrixFormatError,
    SmithForm,
    canonicalize,
    critical_group,
    det,
    invariant_factors,
    minor_gcd,
    rank,
    snf,
)
from .closedform import FormulaViolation, closed_form_group
from .graphs import Multigraph, family, reduced_laplacian
from .harness import VerificationReport, verify, verify_all

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "FormulaViolation",
    "IntMatrix",
    "MatrixFormatError",
    "Multigraph",
    "SmithForm",
    "VerificationReport",
    "canonicalize",
    "closed_form_group",
    "critical_group",
    "det",
    "family",
    "invariant_factors",
    "minor_gcd",
    "rank",
    "reduced_laplacian",
    "snf",
    "verify",
    "verify_all",
]
