"""Jacobi polynomials with one parameter in (-2, -1): evaluation, zeros,
bounds for the zero outside [-1, 1], and executable interlacing checks."""
from .core import ParamPair, Regime, classify, eval_recurrence, eval_sum, reflect
from .interlace import ClaimId, InterlacingVerdict, check
from .zeros import ZeroSet, bound_chain, oracle_zeros

__all__ = [
    "ClaimId",
    "InterlacingVerdict",
    "ParamPair",
    "Regime",
    "ZeroSet",
    "bound_chain",
    "check",
    "classify",
    "eval_recurrence",
    "eval_sum",
    "oracle_zeros",
    "reflect",
]
