"""Mixed three-term relations between Jacobi polynomials of shifted parameters.

Each relation is stored as a list of terms whose sum vanishes identically.
:func:`mixed_relation_residual` returns that sum divided by the largest term
magnitude, so a correct relation gives a residual at rounding level.

Two relations differ from their typeset form:

* ``RN2B3`` is printed without an equals sign. Its sign pattern is fixed by
  :func:`calibrate_n2b3`; the stored pattern is :data:`N2B3_SIGNS`.
* ``RN2B4`` is printed with the wrong sign on the ``P_n`` term; the stored
  form is the one that vanishes.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass

from numpy.polynomial import polynomial as npoly

from .core import ParamPair, eval_recurrence, eval_sum
from .errors import DegenerateParameters, InvalidParameter, UnresolvedRelation

TAU_REL = 1e-8


class RelationId(enum.Enum):
    R217 = "R217"
    RFO = "Rfo"
    RN2B2 = "Rn2b2"
    RN2B3 = "Rn2b3"
    RN2B4 = "Rn2b4"
    R51 = "R51"
    RAIN = "Rain"


# Signs (s_A, s_k) in (x+B_n)P_{n-1} + s_A*A(x)P_n + s_k*k(x+1)^3 P_{n-2}^(a,b+3) = 0.
# Calibration: 12 seeded tuples, n in 3..12, a in (-0.9, 5), b in (-1.95, -1.05),
# x in (-2, 2). Max residuals: (+,+) 1.15, (+,-) 2.0, (-,+) 2.0, (-,-) 1.1e-14.
N2B3_SIGNS: tuple[int, int] | None = (-1, -1)

_MIN_DEGREE = {
    RelationId.R217: 3,
    RelationId.RN2B2: 3,
    RelationId.RN2B3: 3,
    RelationId.RN2B4: 3,
    RelationId.RFO: 2,
    RelationId.R51: 2,
    RelationId.RAIN: 2,
}


def _nz(value: float, what: str) -> float:
    if abs(value) < 1e-9:
        raise DegenerateParameters(f"{what} = {value!r} is within 1e-09 of zero")
    return value


@dataclass(frozen=True)
class MixedRelationCoeffs:
    """Scalars and polynomial factors shared by the mixed relations.

    ``a_poly`` and ``b_poly`` hold ascending coefficients of ``A(x)`` and
    ``B(x)``.
    """

    relation_id: RelationId | None
    n: int
    params: ParamPair
    A_n: float
    B_n: float
    C_n: float
    D_n: float
    E_n: float
    a_poly: tuple[float, ...]
    b_poly: tuple[float, ...]

    def A(self, x):
        return npoly.polyval(x, self.a_poly)

    def B(self, x):
        return npoly.polyval(x, self.b_poly)


def mixed_relation_coeffs(n: int, params: ParamPair, relation_id: RelationId | None = None) -> MixedRelationCoeffs:
    a, b = params.alpha, params.beta
    s = a + b
    A_n = 2 * (b + 1) / _nz(2 * n + s, "2n+alpha+beta")
    B_n = 1 - 2 * (b + 1) * (b + 2) / (_nz(n + b + 1, "n+beta+1") * _nz(n + s + 1, "n+alpha+beta+1"))
    C_n = (b + 3) * (s + 2) + 2 * (n - 1) * (n + s + 2)
    D_n = 2 * (b + 1) * (b + 3)
    E_n = (2 * n + s) * (n + a - 1) * (n + s + 1) * (n + s + 2)
    den = _nz((b + n) * (b + n + 1) * (s + n + 1), "(beta+n)(beta+n+1)(alpha+beta+n+1)")
    a_poly = (
        n * (2 * (b + 1) * (b + 2) - (n - 1) * (a + n - 1)) / den,
        -n * (n - 1) * (a + n - 1) / den,
    )
    b_poly = (
        a**2 + 5 * a * b + 7 * a + 4 * b**3 + 24 * b**2 + 39 * b - 2 * n**3 - 3 * a * n**2
        - 5 * b * n**2 - 4 * n**2 - a**2 * n - 5 * a * b * n - 4 * a * n + 10 * b * n + 14 * n + 16,
        -2 * (n - 1) * (n + a - 1) * (2 * n + a + 3 * b + 4),
        -(n - 1) * (n + a - 1) * (2 * n + a + b),
    )
    return MixedRelationCoeffs(relation_id, n, params, A_n, B_n, C_n, D_n, E_n, a_poly, b_poly)


def _poly(method: str):
    if method == "recurrence":
        return eval_recurrence
    if method == "sum":
        return lambda n, p, x: eval_sum(n, p, x, compensated=True)
    raise InvalidParameter(f"unknown evaluation method {method!r}")


def _n2b3_terms(n, params, x, P, signs):
    a, b = params.alpha, params.beta
    m = mixed_relation_coeffs(n, params)
    k = (a + n - 1) * (a + b + 2 * n) / (4 * (b + n) * (b + n + 1))
    return [
        (x + m.B_n) * P(n - 1, params, x),
        signs[0] * m.A(x) * P(n, params, x),
        signs[1] * k * (x + 1) ** 3 * P(n - 2, params.shifted(dbeta=3), x),
    ]


def relation_terms(relation_id: RelationId, n: int, params: ParamPair, x: float, method: str = "recurrence") -> list[float]:
    """Terms of the relation, arranged so that they sum to zero."""
    relation_id = RelationId(relation_id)
    if n < _MIN_DEGREE[relation_id]:
        raise InvalidParameter(f"{relation_id.value} needs n >= {_MIN_DEGREE[relation_id]}, got {n}")
    P = _poly(method)
    a, b = params.alpha, params.beta
    s = a + b
    b1, b2 = params.shifted(dbeta=1), params.shifted(dbeta=2)

    if relation_id is RelationId.R217:
        return [
            2 * n * (s + n) * P(n, params, x),
            (1 + x) * (a + n - 1) * (s + 2 * n) * P(n - 2, b1, x),
            (2 * (b + n) * (s + n) - (x + 1) * (s + 2 * n - 1) * (s + 2 * n)) * P(n - 1, params, x),
        ]
    if relation_id is RelationId.RFO:
        return [
            (x + 1) * (s + n + 1) * P(n - 1, b2, x),
            -2 * n * P(n, params, x),
            -2 * (b + 1) * P(n - 1, b1, x),
        ]
    if relation_id is RelationId.RN2B2:
        A_n = mixed_relation_coeffs(n, params).A_n
        return [
            (b + n) / (2 * n) * (x + 1 - A_n) * P(n - 1, params, x),
            -(x + 1) ** 2 * (a + n - 1) / (4 * n) * P(n - 2, b2, x),
            -(b + 1) / (s + 2 * n) * P(n, params, x),
        ]
    if relation_id is RelationId.RN2B3:
        if N2B3_SIGNS is None:
            raise UnresolvedRelation("Rn2b3 sign pattern has not been calibrated")
        return _n2b3_terms(n, params, x, P, N2B3_SIGNS)
    if relation_id is RelationId.RN2B4:
        m = mixed_relation_coeffs(n, params)
        den = _nz((n + b) * (b + 2), "(n+beta)(beta+2)")
        return [
            (m.C_n * (x + 1) - m.D_n) * P(n - 1, params, x),
            -(x + 1) ** 4 * m.E_n / (8 * den) * P(n - 2, params.shifted(dbeta=4), x),
            -n * m.B(x) / (2 * den) * P(n, params, x),
        ]
    if relation_id is RelationId.R51:
        return [
            (2 * (b + 1) + (x + 1) * (s + 2 * n + 2)) * P(n, b1, x),
            -(x + 1) * (s + n + 2) * P(n, b2, x),
            -2 * (b + n + 1) * P(n, params, x),
        ]
    # RAIN
    return [
        0.5 * (2 + s + 2 * n) * (x + 1) * P(n, b1, x),
        -(n + 1) * P(n + 1, params, x),
        -(1 + b + n) * P(n, params, x),
    ]


def _normalised(terms) -> float:
    scale = max(abs(t) for t in terms)
    if scale == 0:
        return 0.0
    return float(sum(terms) / scale)


def mixed_relation_residual(relation_id, n: int, params: ParamPair, x: float, method: str = "recurrence") -> float:
    """Sum of the relation's terms divided by the largest term magnitude."""
    return _normalised(relation_terms(relation_id, n, params, x, method))


def k_constants(n: int, params: ParamPair) -> tuple[float, float, float, float]:
    """``k_1..k_4`` of the rearranged form ``(k1 - (x+1)k2) P_{n-1} = -(1+x)k3 P_{n-2}^(a,b+1) - k4 P_n``."""
    a, b = params.alpha, params.beta
    s = a + b
    return (
        2 * (b + n) * (s + n),
        (s + 2 * n - 1) * (s + 2 * n),
        (a + n - 1) * (s + 2 * n),
        2 * n * (s + n),
    )


def k_form_residual(n: int, params: ParamPair, x: float, method: str = "recurrence") -> float:
    P = _poly(method)
    k1, k2, k3, k4 = k_constants(n, params)
    return _normalised([
        (k1 - (x + 1) * k2) * P(n - 1, params, x),
        (1 + x) * k3 * P(n - 2, params.shifted(dbeta=1), x),
        k4 * P(n, params, x),
    ])


def calibrate_n2b3(samples: int = 12, seed: int = 1, tol: float = TAU_REL) -> dict[tuple[int, int], float]:
    """Max residual of every candidate sign pattern over random tuples.

    Evaluation uses the explicit sum, independent of the recurrence. The
    accepted pattern is the unique one whose residual is below ``tol``.
    """
    rng = random.Random(seed)
    tuples = [
        (rng.randint(3, 12), rng.uniform(-0.9, 5.0), rng.uniform(-1.95, -1.05), rng.uniform(-2.0, 2.0))
        for _ in range(samples)
    ]
    P = _poly("sum")
    out = {}
    for signs in itertools.product((1, -1), repeat=2):
        out[signs] = max(
            abs(_normalised(_n2b3_terms(n, ParamPair(a, b), x, P, signs))) for n, a, b, x in tuples
        )
    return out
