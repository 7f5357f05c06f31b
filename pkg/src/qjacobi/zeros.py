"""Real zeros of Jacobi polynomials in the orthogonal and quasi-orthogonal regimes.

Orthogonal-regime zeros come from the symmetric tridiagonal (Jacobi) matrix
built out of the recurrence coefficients. In the quasi-orthogonal regime
(``alpha > -1, -2 < beta < -1``) the ``n - 1`` zeros inside ``(-1, 1)`` are
separated by the zeros of ``P_n^(alpha, beta+1)``, which serve as brackets,
and the one zero below ``-1`` is bracketed by the bound chain below.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ParamPair,
    Regime,
    derivative_evaluator,
    eval_exact,
    eval_sum,
    evaluator,
    recurrence_coeffs,
    reflect,
)
from .errors import (
    BracketFailure,
    ConvergenceFailure,
    DegenerateParameters,
    InvalidParameter,
    OracleFailure,
)
from .relations import mixed_relation_coeffs

TAU_ROOT = 1e-12
TAU_SEP = 1e-10
MAX_ITER = 200
STEP_TOL = 1e-13
STALL_TOL = 1e-9
ORACLE_MAX_DEGREE = 12


class Method(enum.Enum):
    GOLUB_WELSCH = "golub-welsch"
    BRACKETED_HYBRID = "bracketed-hybrid"
    ORACLE = "oracle"


@dataclass(frozen=True)
class ZeroSet:
    n: int
    params: ParamPair
    zeros: tuple[float, ...]
    method: Method
    residuals: tuple[float, ...]

    def __len__(self):
        return len(self.zeros)

    def __iter__(self):
        return iter(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]

    @property
    def outer(self) -> float | None:
        """The zero outside ``[-1, 1]`` in a quasi-orthogonal regime."""
        out = [z for z in self.zeros if abs(z) > 1]
        return out[0] if len(out) == 1 else None

    @property
    def interior(self) -> tuple[float, ...]:
        return tuple(z for z in self.zeros if -1 < z < 1)


@dataclass(frozen=True)
class BoundChain:
    loose_lower: float
    tight_lower: float
    upper: float

    def as_tuple(self):
        return (self.loose_lower, self.tight_lower, self.upper)


def _scaled_residual(f, df, z: float) -> float:
    fz = f(z)
    if fz == 0:
        return 0.0
    d = abs(df(z)) * max(1.0, abs(z))
    return abs(fz) / d if d > 0 else math.inf


def _converge(f, df, lo: float, hi: float, max_iter: int):
    """Safeguarded Newton iteration until the step or the bracket is at
    rounding level; no residual check."""
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise BracketFailure(f"no sign change on [{lo!r}, {hi!r}]: f(lo)={flo!r}, f(hi)={fhi!r}")
    x = 0.5 * (lo + hi)
    prev_step = math.inf
    for _ in range(max_iter):
        fx = f(x)
        if fx == 0:
            return x
        if (fx > 0) == (flo > 0):
            lo, flo = x, fx
        else:
            hi = x
        d = df(x)
        xn = x - fx / d if d != 0 else math.inf
        scale = max(1.0, abs(x))
        step = abs(xn - x)
        # x sits on a bracket end after the update, so test the raw step first
        if step <= STEP_TOL * scale:
            return xn if lo <= xn <= hi else x
        if step < STALL_TOL * scale and step >= 0.5 * prev_step:
            # Newton steps stopped shrinking: evaluation noise floor
            return x
        if lo < xn < hi:
            prev_step = step
        else:
            xn = 0.5 * (lo + hi)
            prev_step = math.inf
        if hi - lo <= 4 * np.finfo(float).eps * scale:
            return xn
        x = xn
    raise ConvergenceFailure(f"no convergence in {max_iter} iterations on [{lo!r}, {hi!r}]")


def refine_zero(f, df, lo: float, hi: float, tol: float = TAU_ROOT, max_iter: int = MAX_ITER) -> float:
    """Zero of ``f`` in a sign-change bracket by Newton with bisection fallback.

    Newton steps that leave the current bracket are replaced by bisection,
    so the iterate never escapes ``[lo, hi]``. The result satisfies
    ``|f(z)| <= tol * |f'(z)| * max(1, |z|)``.
    """
    z = _converge(f, df, lo, hi, max_iter)
    r = _scaled_residual(f, df, z)
    if r > tol:
        raise ConvergenceFailure(f"converged to {z!r} with scaled residual {r:.3g} > {tol:g}")
    return z


def _polish_exact(n, params, df, z):
    """Newton steps with the exactly evaluated recurrence; returns ``(z, residual)``."""
    def exact(v):
        return float(eval_exact(n, params, v))

    best = (z, _scaled_residual(exact, df, z))
    for _ in range(3):
        z0 = best[0]
        d = df(z0)
        if d == 0 or best[1] <= TAU_ROOT * 1e-3:
            break
        z1 = z0 - exact(z0) / d
        r1 = _scaled_residual(exact, df, z1)
        if r1 >= best[1]:
            break
        best = (z1, r1)
    return best


def _certify(n, params, zeros, method, f=None, df=None) -> ZeroSet:
    """Check count, separation and scaled residuals.

    A zero whose double-precision residual exceeds ``TAU_ROOT`` is polished
    and re-measured with exact rational evaluation of the recurrence before
    it is rejected.
    """
    f = f or evaluator(n, params)
    df = df or derivative_evaluator(n, params)
    zeros = [float(z) for z in zeros]
    if len(zeros) != n:
        raise ConvergenceFailure(f"expected {n} zeros, got {len(zeros)}")
    residuals = []
    for i, z in enumerate(zeros):
        r = _scaled_residual(f, df, z)
        if r > TAU_ROOT:
            zeros[i], r = _polish_exact(n, params, df, z)
        if r > TAU_ROOT:
            raise ConvergenceFailure(f"zero {zeros[i]!r} of P_{n}: scaled residual {r:.3g} exceeds {TAU_ROOT:g}")
        residuals.append(r)
    for z0, z1 in zip(zeros, zeros[1:]):
        if not z1 - z0 > TAU_SEP:
            raise ConvergenceFailure(f"zeros {z0!r} and {z1!r} are not separated by {TAU_SEP:g}")
    return ZeroSet(n, params, tuple(zeros), method, tuple(residuals))


def _require(params: ParamPair, regime: Regime):
    if params.regime is not regime:
        raise InvalidParameter(f"{params!r} is not in the {regime.value} regime")


def jacobi_matrix(n: int, params: ParamPair):
    """Diagonal and off-diagonal of the symmetric tridiagonal matrix whose
    eigenvalues are the zeros of ``P_n``.

    With ``p_k = P_k / lead_k`` monic, ``x p_{k-1} = p_k + d_k p_{k-1} + e_k c_{k-1} p_{k-2}``.
    """
    a, b = params.alpha, params.beta
    s2 = a + b + 2
    if abs(s2) < 1e-9:
        raise DegenerateParameters("alpha+beta+2 is within 1e-09 of zero (P_1 is constant)")
    diag = [(b - a) / s2]
    off2 = []
    c_prev = 2.0 / s2
    for k in range(2, n + 1):
        rc = recurrence_coeffs(k, params)
        diag.append(rc.d_n)
        off2.append(rc.e_n * c_prev)
        c_prev = rc.c_n
    off2 = np.asarray(off2, dtype=float)
    if np.any(off2 <= 0):
        raise DegenerateParameters("non-positive off-diagonal product; matrix cannot be symmetrised")
    return np.asarray(diag), np.sqrt(off2)


def zeros_orthogonal(n: int, params: ParamPair) -> ZeroSet:
    """Zeros for ``alpha, beta > -1``: eigenvalues plus one Newton polish each."""
    _require(params, Regime.ORTHOGONAL)
    if n < 1:
        raise InvalidParameter(f"degree must be >= 1, got {n}")
    diag, off = jacobi_matrix(n, params)
    mat = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    eig = np.sort(np.linalg.eigvalsh(mat))
    f, df = evaluator(n, params), derivative_evaluator(n, params)
    polished = []
    for z in eig:
        z = float(z)
        fz = f(z)
        d = df(z)
        if d != 0:
            zn = z - fz / d
            if abs(f(zn)) <= abs(fz):
                z = zn
        polished.append(z)
    zs = _certify(n, params, polished, Method.GOLUB_WELSCH, f, df)
    if not (-1 < zs.zeros[0] and zs.zeros[-1] < 1):
        raise ConvergenceFailure(f"orthogonal zeros escaped (-1, 1): {zs.zeros}")
    return zs


def bound_chain(n: int, params: ParamPair) -> BoundChain:
    """``(-1 + A_n, -1 + D_n/C_n, -B_n)`` for the zero below ``-1``."""
    _require(params, Regime.QUASI_ORDER1)
    if n < 3:
        raise InvalidParameter(f"bound chain needs n >= 3, got {n}")
    m = mixed_relation_coeffs(n, params)
    if abs(m.C_n) < 1e-9:
        raise DegenerateParameters("C_n is within 1e-09 of zero")
    return BoundChain(-1 + m.A_n, -1 + m.D_n / m.C_n, -m.B_n)


def askey_delta(n: int, params: ParamPair) -> float:
    """The point ``-1 - 2(beta+1)/(alpha+beta+2n+2)``, the only possible common
    zero of ``P_n^(alpha,beta)`` and ``P_n^(alpha,beta+2)``."""
    den = params.alpha + params.beta + 2 * n + 2
    if abs(den) < 1e-9:
        raise DegenerateParameters("alpha+beta+2n+2 is within 1e-09 of zero")
    return -1 - 2 * (params.beta + 1) / den


def _outer_bracket_fallback(f, max_k: int = 12):
    for k in range(max_k + 1):
        lo = -1.0 - 2.0**k
        if (f(lo) > 0) != (f(-1.0) > 0):
            return lo, -1.0
    raise BracketFailure(f"no sign change on [-1 - 2^k, -1] for k <= {max_k}")


def zeros_quasi(n: int, params: ParamPair) -> ZeroSet:
    """Zeros for ``alpha > -1, -2 < beta < -1``.

    Interior zeros are refined in the gaps between consecutive zeros of
    ``P_n^(alpha, beta+1)``; the outer zero in ``[-1 + D_n/C_n, -B_n]``
    (``n >= 3``) or an expanding bracket below ``-1`` (``n = 2``). Degree 1
    is solved in closed form; its zero lies above 1 when ``alpha+beta+2 < 0``.
    """
    _require(params, Regime.QUASI_ORDER1)
    if n < 1:
        raise InvalidParameter(f"degree must be >= 1, got {n}")
    f, df = evaluator(n, params), derivative_evaluator(n, params)
    if n == 1:
        s2 = params.alpha + params.beta + 2
        if abs(s2) < 1e-9:
            raise DegenerateParameters("alpha+beta+2 is within 1e-09 of zero (P_1 is constant)")
        return _certify(1, params, [(params.beta - params.alpha) / s2], Method.BRACKETED_HYBRID, f, df)

    y = zeros_orthogonal(n, params.shifted(dbeta=1)).zeros
    interior = [_converge(f, df, y[i], y[i + 1], MAX_ITER) for i in range(n - 1)]
    if n >= 3:
        bc = bound_chain(n, params)
        lo, hi = bc.tight_lower, bc.upper
    else:
        lo, hi = _outer_bracket_fallback(f)
    outer = _converge(f, df, lo, hi, MAX_ITER)
    zs = _certify(n, params, [outer, *interior], Method.BRACKETED_HYBRID, f, df)
    if not (zs.zeros[0] < -1 < zs.zeros[1] and zs.zeros[-1] < 1):
        raise ConvergenceFailure(f"quasi zeros violate the one-below-minus-one placement: {zs.zeros}")
    return zs


def zeros_mirrored(n: int, params: ParamPair) -> ZeroSet:
    """Zeros for ``-2 < alpha < -1, beta > -1`` via ``x -> -x`` reflection,
    re-certified against direct evaluation at ``params``."""
    _require(params, Regime.QUASI_ORDER1_MIRRORED)
    base = zeros_quasi(n, reflect(params))
    return _certify(n, params, [-z for z in reversed(base.zeros)], Method.BRACKETED_HYBRID)


def zeros(n: int, params: ParamPair) -> ZeroSet:
    """Dispatch on the regime."""
    if params.regime is Regime.ORTHOGONAL:
        return zeros_orthogonal(n, params)
    if params.regime is Regime.QUASI_ORDER1:
        return zeros_quasi(n, params)
    if params.regime is Regime.QUASI_ORDER1_MIRRORED:
        return zeros_mirrored(n, params)
    raise InvalidParameter(f"{params!r}: no zero solver for this regime")


def oracle_zeros(n: int, params: ParamPair, lo: float = -5.0, hi: float = 5.0, step: float = 1e-4) -> ZeroSet:
    """Zeros by exhaustive sign scan of the explicit sum plus bisection.

    Uses no bracketing theory and no recurrence; intended for tests.
    """
    if not 0 <= n <= ORACLE_MAX_DEGREE:
        raise InvalidParameter(f"oracle limited to n <= {ORACLE_MAX_DEGREE}, got {n}")
    m = int(round((hi - lo) / step))
    xs = lo + step * np.arange(m + 1)
    vals = eval_sum(n, params, xs)
    sgn = np.sign(vals)

    def p(x):
        return eval_sum(n, params, x, compensated=True)

    found = []
    for i in np.flatnonzero(sgn == 0):
        found.append(float(xs[i]))
    for i in np.flatnonzero(sgn[:-1] * sgn[1:] < 0):
        a, b = float(xs[i]), float(xs[i + 1])
        fa = p(a)
        while b - a > 1e-12:
            mid = 0.5 * (a + b)
            fm = p(mid)
            if fm == 0:
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        found.append(0.5 * (a + b))
    found.sort()
    if len(found) != n:
        raise OracleFailure(f"sign scan found {len(found)} zeros of P_{n}{(params.alpha, params.beta)}, expected {n}")
    h = 1e-6
    residuals = []
    for z in found:
        d = (p(z + h) - p(z - h)) / (2 * h)
        residuals.append(abs(p(z)) / (abs(d) * max(1.0, abs(z))) if d else math.inf)
    return ZeroSet(n, params, tuple(found), Method.ORACLE, tuple(residuals))
