"""Jacobi polynomial evaluation for arbitrary real parameters.

Two independent evaluation paths are provided:

* :func:`eval_recurrence` runs the normalised three-term recurrence
  ``c_n P_n = (x - d_n) P_{n-1} - e_n P_{n-2}`` seeded with ``P_0 = 1`` and
  ``P_1 = (a+b+2)x/2 + (a-b)/2``. This is the production path.
* :func:`eval_sum` uses the finite binomial sum, which is a polynomial
  identity in ``(a, b)`` and therefore valid for every real parameter pair.
  It is the in-process oracle.

All evaluators accept a float or a numpy array for ``x``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DegenerateParameters, InvalidParameter

#: guard on every denominator factor of the recurrence coefficients
TAU_DEN = 1e-9
#: relative agreement between the two evaluation paths
TAU_EVAL = 1e-9


class Regime(enum.Enum):
    ORTHOGONAL = "orthogonal"
    QUASI_ORDER1 = "quasi-order1"
    QUASI_ORDER1_MIRRORED = "quasi-order1-mirrored"
    UNSUPPORTED = "unsupported"


def _regime(alpha: float, beta: float) -> Regime:
    if alpha > -1 and beta > -1:
        return Regime.ORTHOGONAL
    if alpha > -1 and -2 < beta < -1:
        return Regime.QUASI_ORDER1
    if beta > -1 and -2 < alpha < -1:
        return Regime.QUASI_ORDER1_MIRRORED
    return Regime.UNSUPPORTED


@dataclass(frozen=True)
class ParamPair:
    """A Jacobi parameter pair together with its regime.

    Build instances with :func:`classify`; the regime is derived, never passed.
    """

    alpha: float
    beta: float
    regime: Regime = field(init=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise InvalidParameter(f"non-finite parameters alpha={self.alpha!r}, beta={self.beta!r}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "regime", _regime(self.alpha, self.beta))

    def shifted(self, dalpha: float = 0.0, dbeta: float = 0.0) -> "ParamPair":
        return ParamPair(self.alpha + dalpha, self.beta + dbeta)

    def __repr__(self):
        return f"ParamPair(alpha={self.alpha!r}, beta={self.beta!r}, regime={self.regime.value})"


def classify(alpha: float, beta: float) -> ParamPair:
    """Return the parameter pair with its regime attached.

    ``beta == -1`` (and ``alpha == -1``) fall between regimes and are
    classified as unsupported.
    """
    try:
        alpha, beta = float(alpha), float(beta)
    except (TypeError, ValueError) as exc:
        raise InvalidParameter(str(exc)) from None
    return ParamPair(alpha, beta)


def reflect(params: ParamPair) -> ParamPair:
    """Swap alpha and beta: ``P_n^(a,b)(x) = (-1)^n P_n^(b,a)(-x)``."""
    return ParamPair(params.beta, params.alpha)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    c_n: float
    d_n: float
    e_n: float


def _guard(value: float, what: str) -> float:
    if abs(value) < TAU_DEN:
        raise DegenerateParameters(f"{what} = {value!r} is within {TAU_DEN:g} of zero")
    return value


def recurrence_coeffs(n: int, params: ParamPair) -> RecurrenceCoeffs:
    """Closed-form ``c_n, d_n, e_n`` for ``n >= 2``."""
    if n < 2:
        raise InvalidParameter(f"recurrence coefficients need n >= 2, got {n}")
    a, b = params.alpha, params.beta
    s = a + b
    _guard(n + s, f"n+alpha+beta (n={n})")
    f0 = _guard(2 * n + s - 2, f"2n+alpha+beta-2 (n={n})")
    f1 = _guard(2 * n + s - 1, f"2n+alpha+beta-1 (n={n})")
    f2 = _guard(2 * n + s, f"2n+alpha+beta (n={n})")
    c = 2 * n * (n + s) / (f1 * f2)
    d = (b * b - a * a) / (f0 * f2)
    e = 2 * (n + a - 1) * (n + b - 1) / (f0 * f1)
    return RecurrenceCoeffs(c, d, e)


def recurrence_table(n: int, params: ParamPair) -> list[RecurrenceCoeffs]:
    """Coefficients for degrees 2..n, validated up front."""
    return [recurrence_coeffs(k, params) for k in range(2, n + 1)]


def _run_recurrence(table, n: int, params: ParamPair, x):
    if n == 0:
        return x * 0.0 + 1.0
    a, b = params.alpha, params.beta
    p_prev = x * 0.0 + 1.0
    p = 0.5 * (a + b + 2) * x + 0.5 * (a - b)
    for c, d, e in table:
        p_prev, p = p, ((x - d) * p - e * p_prev) / c
    return p


def _packed(n: int, params: ParamPair):
    return [(rc.c_n, rc.d_n, rc.e_n) for rc in recurrence_table(n, params)] if n >= 2 else []


def eval_recurrence(n: int, params: ParamPair, x):
    """``P_n^(alpha,beta)(x)`` by forward recurrence."""
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n}")
    return _run_recurrence(_packed(n, params), n, params, x)


def eval_exact(n: int, params: ParamPair, x: float) -> Fraction:
    """The recurrence run in exact rational arithmetic at a float ``x``.

    Floats are exact binary rationals, so the result is the exact value of
    the recurrence-defined polynomial at ``x``. Slow; used to certify zeros
    where double-precision rounding (about 1e-11 relative near ``x = -1``)
    hides the residual.
    """
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n}")
    if n >= 2:
        recurrence_table(n, params)  # same degeneracy guards as the float path
    a, b, x = Fraction(params.alpha), Fraction(params.beta), Fraction(x)
    s = a + b
    p_prev, p = Fraction(1), (s + 2) * x / 2 + (a - b) / 2
    if n == 0:
        return p_prev
    for k in range(2, n + 1):
        c = 2 * k * (k + s) / ((2 * k + s - 1) * (2 * k + s))
        d = (b * b - a * a) / ((2 * k + s - 2) * (2 * k + s))
        e = 2 * (k + a - 1) * (k + b - 1) / ((2 * k + s - 2) * (2 * k + s - 1))
        p_prev, p = p, ((x - d) * p - e * p_prev) / c
    return p


def evaluator(n: int, params: ParamPair):
    """Return ``x -> P_n(x)`` with the coefficient table computed once."""
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n}")
    table = _packed(n, params)
    return lambda x: _run_recurrence(table, n, params, x)


def derivative_evaluator(n: int, params: ParamPair):
    """Return ``x -> P_n'(x)`` using ``P_n' = (n+a+b+1)/2 * P_{n-1}^(a+1,b+1)``."""
    if n < 1:
        raise InvalidParameter(f"derivative needs n >= 1, got {n}")
    scale = 0.5 * (n + params.alpha + params.beta + 1)
    inner = evaluator(n - 1, params.shifted(1.0, 1.0))
    return lambda x: scale * inner(x)


def eval_derivative(n: int, params: ParamPair, x):
    return derivative_evaluator(n, params)(x)


def _binom(z: float, k: int) -> float:
    # generalised binomial coefficient, polynomial in z
    r = 1.0
    for i in range(k):
        r *= (z - i) / (i + 1)
    return r


def sum_coefficients(n: int, params: ParamPair) -> list[float]:
    """Weights ``binom(n+a, n-s) * binom(n+b, s)`` of the explicit sum."""
    a, b = params.alpha, params.beta
    return [_binom(n + a, n - s) * _binom(n + b, s) for s in range(n + 1)]


def eval_sum(n: int, params: ParamPair, x, compensated: bool = False):
    """``P_n^(alpha,beta)(x)`` from the explicit binomial sum.

    ``compensated=True`` accumulates with :func:`math.fsum` (scalar x only
    per call; arrays are handled elementwise).
    """
    if n < 0:
        raise InvalidParameter(f"degree must be >= 0, got {n}")
    w = sum_coefficients(n, params)
    if compensated:
        if np.ndim(x):
            return np.array([eval_sum(n, params, float(xi), True) for xi in np.ravel(x)]).reshape(np.shape(x))
        x = float(x)
        if not math.isfinite(x):
            raise InvalidParameter(f"non-finite x={x!r}")
        u, v = 0.5 * (x - 1), 0.5 * (x + 1)
        return math.fsum(w[s] * u**s * v ** (n - s) for s in range(n + 1))
    u, v = 0.5 * (x - 1), 0.5 * (x + 1)
    # powers by repeated multiplication; array ** is much slower
    vpow = [x * 0.0 + 1.0]
    for _ in range(n):
        vpow.append(vpow[-1] * v)
    total = x * 0.0
    upow = x * 0.0 + 1.0
    for s in range(n + 1):
        total = total + w[s] * upow * vpow[n - s]
        upow = upow * u
    return total
