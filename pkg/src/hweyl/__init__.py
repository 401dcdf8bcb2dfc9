"""Spectral counting, remainder moments and resonance constants for the
3-dimensional Heisenberg manifold with the arithmetic metric diag(1, 1, 2*pi).
"""

from hweyl.errors import (
    CutoffTooLarge,
    HweylError,
    InvalidConfig,
    NonpositiveValue,
    OutOfRange,
    QuadratureFailure,
    TermBudgetExceeded,
    UnsupportedMoment,
    VerificationFailed,
)
from hweyl.spectrum import (
    Branch,
    EigenvalueEntry,
    JumpSequence,
    merged_jump_sequence,
    r2,
    torus_eigenvalues,
    typeII_eigenvalues,
)
from hweyl.counting import KAPPA, main_term, remainder, remainder_H_scaled
from hweyl.moments import fit_power_law, moment_curve, moment_integral
from hweyl.mollifier import build_bump, mollified_count_H, sandwich_check
from hweyl.expsum import ExpSumConfig, build_terms, evaluate_R_eps
from hweyl.constants import b3_estimate, c2_partial, d3_estimate

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "CutoffTooLarge",
    "EigenvalueEntry",
    "ExpSumConfig",
    "HweylError",
    "InvalidConfig",
    "JumpSequence",
    "KAPPA",
    "NonpositiveValue",
    "OutOfRange",
    "QuadratureFailure",
    "TermBudgetExceeded",
    "UnsupportedMoment",
    "VerificationFailed",
    "b3_estimate",
    "build_bump",
    "build_terms",
    "c2_partial",
    "d3_estimate",
    "evaluate_R_eps",
    "fit_power_law",
    "main_term",
    "merged_jump_sequence",
    "moment_curve",
    "moment_integral",
    "mollified_count_H",
    "r2",
    "remainder",
    "remainder_H_scaled",
    "sandwich_check",
    "torus_eigenvalues",
    "typeII_eigenvalues",
]
