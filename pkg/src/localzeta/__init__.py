"""Exact local computations for a moment identity of GL(n+1) x GL(n) type.

Schur-polynomial Whittaker values, local L-factors over Q(i)[sqrt p],
brute-force versus closed-form local zeta integrals, and the local weights
of the reciprocity formula.
"""

__version__ = "0.1.0"

from .errors import (
    ConvergenceError,
    DegenerateFactorError,
    LocalZetaError,
    MixedResidueError,
    PoleError,
    PreconditionError,
    SingularError,
)
from .ring import EulerFactor, Scalar, Series2, format_scalar, p_power, parse_scalar
from .reps import (
    DominantWeight,
    RamifiedDescriptor,
    UnramifiedRep,
    dual,
    isobaric_sum,
    schur,
    sigma_pi_z,
    twist,
    whittaker_value,
)
from .lfactors import SVarSpec, X1, X2, local_L, local_L_rs
from .spectral import PrimeLocalData, SPoint, main_term, scheck

__all__ = [
    "__version__",
    "ConvergenceError",
    "DegenerateFactorError",
    "LocalZetaError",
    "MixedResidueError",
    "PoleError",
    "PreconditionError",
    "SingularError",
    "EulerFactor",
    "Scalar",
    "Series2",
    "format_scalar",
    "p_power",
    "parse_scalar",
    "DominantWeight",
    "RamifiedDescriptor",
    "UnramifiedRep",
    "dual",
    "isobaric_sum",
    "schur",
    "sigma_pi_z",
    "twist",
    "whittaker_value",
    "SVarSpec",
    "X1",
    "X2",
    "local_L",
    "local_L_rs",
    "PrimeLocalData",
    "SPoint",
    "main_term",
    "scheck",
]
