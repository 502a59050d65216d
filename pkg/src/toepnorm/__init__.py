"""Normality testing and structure classification for Toeplitz matrices.

A Toeplitz matrix is determined by its diagonal values a_k, k = -N..N.
This package decides whether such a matrix is normal (commutes with its
conjugate transpose) and, when it is, names the structure responsible:
a unit-modulus conjugate-symmetry witness (type I), a unit-modulus
reversal witness (type II), or the four real specializations symmetric,
skew-symmetric, circulant and skew-circulant.  All analysis runs in
either exact rational arithmetic or floating point under an explicit
tolerance policy.
"""

from .classify import (
    ClassificationResult,
    ProofTrace,
    RealClassificationResult,
    RealLabel,
    TheoremViolation,
    Verdict,
    classify_complex,
    classify_real,
    classify_via_proof,
)
from .genlab import (
    EnumReport,
    EnumRequest,
    GenRequest,
    Kind,
    enumerate_and_verify,
    generate,
    perturb,
)
from .normality import NormalityReport, check, fast_max_residual, residual
from .scalar import (
    GaussianRational,
    Mode,
    ScalarPolicy,
    SpecFormatError,
    rational_unit_circle,
)
from .toeplitz import (
    ToeplitzSpec,
    commutator,
    commutator_norm,
    from_diagonals,
    materialize,
    spec_from_json,
    spec_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "EnumReport",
    "EnumRequest",
    "GaussianRational",
    "GenRequest",
    "Kind",
    "Mode",
    "NormalityReport",
    "ProofTrace",
    "RealClassificationResult",
    "RealLabel",
    "ScalarPolicy",
    "SpecFormatError",
    "TheoremViolation",
    "ToeplitzSpec",
    "Verdict",
    "check",
    "classify_complex",
    "classify_real",
    "classify_via_proof",
    "commutator",
    "commutator_norm",
    "enumerate_and_verify",
    "fast_max_residual",
    "from_diagonals",
    "generate",
    "materialize",
    "perturb",
    "rational_unit_circle",
    "residual",
    "spec_from_json",
    "spec_to_json",
]
