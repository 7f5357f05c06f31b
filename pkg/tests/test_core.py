import math

import numpy as np
import pytest

from qjacobi.core import (
    TAU_EVAL,
    ParamPair,
    Regime,
    classify,
    eval_derivative,
    eval_exact,
    eval_recurrence,
    eval_sum,
    recurrence_coeffs,
    reflect,
)
from qjacobi.errors import DegenerateParameters, InvalidParameter

from conftest import grid

TAU_FD = 1e-5


@pytest.mark.parametrize("a, b, regime", [
    (0.93, -1.9, Regime.QUASI_ORDER1),
    (0.0, 0.0, Regime.ORTHOGONAL),
    (-1.9, 0.93, Regime.QUASI_ORDER1_MIRRORED),
    (0.5, -1.0, Regime.UNSUPPORTED),
    (-1.0, 0.5, Regime.UNSUPPORTED),
    (0.5, -2.0, Regime.UNSUPPORTED),
    (-1.5, -1.5, Regime.UNSUPPORTED),
])
def test_classify(a, b, regime):
    assert classify(a, b).regime is regime


@pytest.mark.parametrize("a, b", [(math.nan, 0.0), (0.0, math.inf), ("x", 0.0)])
def test_classify_rejects_non_finite(a, b):
    with pytest.raises(InvalidParameter):
        classify(a, b)


def test_regime_not_settable():
    with pytest.raises(TypeError):
        ParamPair(0.0, 0.0, Regime.QUASI_ORDER1)


def test_recurrence_coeffs_legendre():
    rc = recurrence_coeffs(2, classify(0, 0))
    assert rc.c_n == pytest.approx(2 / 3, abs=1e-15)
    assert rc.d_n == 0.0
    assert rc.e_n == pytest.approx(1 / 3, abs=1e-15)


def test_recurrence_coeffs_finite_at_n15():
    a, b, n = 0.93, -1.9, 15
    rc = recurrence_coeffs(n, classify(a, b))
    assert all(math.isfinite(v) for v in (rc.c_n, rc.d_n, rc.e_n))
    assert min(2 * n + a + b - 2, 2 * n + a + b - 1, 2 * n + a + b) > 25


def test_recurrence_coeffs_degenerate():
    with pytest.raises(DegenerateParameters, match="n\\+alpha\\+beta"):
        recurrence_coeffs(2, classify(-0.5, -1.5))
    with pytest.raises(DegenerateParameters):
        eval_recurrence(5, classify(-0.5, -1.5), 0.3)


def test_recurrence_coeffs_needs_n2():
    with pytest.raises(InvalidParameter):
        recurrence_coeffs(1, classify(0, 0))


def test_eval_examples():
    p = classify(0.93, -1.9)
    assert eval_recurrence(0, p, 0.3) == 1.0
    root = (p.beta - p.alpha) / (p.alpha + p.beta + 2)
    assert root == pytest.approx(-2.74757, abs=1e-5)
    assert abs(eval_recurrence(1, p, root)) < 1e-14
    assert eval_recurrence(2, classify(0, 0), 1.0) == pytest.approx(1.0, abs=1e-15)
    assert eval_sum(2, classify(0, 0), 1.0) == pytest.approx(1.0, abs=1e-15)


def test_eval_sum_examples():
    p = classify(0.93, -1.9)
    for x in (-2.0, 0.0, 0.7):
        assert eval_sum(0, p, x) == 1.0
    assert eval_sum(1, p, 0.0) == pytest.approx(1.415, abs=1e-14)
    q = classify(2.35, -1.5)
    r, s = eval_recurrence(5, q, 0.0), eval_sum(5, q, 0.0)
    assert abs(r - s) <= TAU_EVAL * max(1.0, abs(s))


def test_eval_sum_compensated_matches_plain():
    p = classify(2.35, -1.9)
    xs = np.linspace(-2, 2, 9)
    assert np.allclose(eval_sum(9, p, xs, compensated=True), eval_sum(9, p, xs), rtol=1e-12, atol=1e-12)


def test_negative_degree():
    with pytest.raises(InvalidParameter):
        eval_recurrence(-1, classify(0, 0), 0.0)


def test_cross_method_agreement_on_grid():
    xs = np.linspace(-3, 3, 61)
    worst = 0.0
    for n, p in grid(0, 20):
        r = eval_recurrence(n, p, xs)
        s = eval_sum(n, p, xs)
        worst = max(worst, float(np.max(np.abs(r - s) / np.maximum(1.0, np.abs(s)))))
    assert worst <= TAU_EVAL


def test_exact_matches_float():
    p = classify(2.35, -1.9)
    for x in (-1.0208, -0.3, 0.8):
        assert float(eval_exact(7, p, x)) == pytest.approx(eval_recurrence(7, p, x), rel=1e-12, abs=1e-14)


def test_derivative_examples():
    for a, b in ((0.93, -1.9), (0, 0), (2.35, -1.5)):
        p = classify(a, b)
        assert eval_derivative(1, p, 0.37) == pytest.approx(0.5 * (a + b + 2), abs=1e-15)
    assert eval_derivative(2, classify(0, 0), 0.0) == 0.0


def _fd(n, p, x):
    h = 1e-6 * max(1.0, abs(x))
    return (eval_recurrence(n, p, x + h) - eval_recurrence(n, p, x - h)) / (2 * h)


def test_derivative_finite_difference():
    p = classify(2.35, -1.5)
    d = eval_derivative(5, p, -1.0)
    assert abs(d - _fd(5, p, -1.0)) <= TAU_FD * max(1.0, abs(d))


def test_derivative_finite_difference_grid():
    for n, p in grid(2, 12):
        for x in (-1.3, -0.6, 0.2, 0.9):
            d = eval_derivative(n, p, x)
            assert abs(d - _fd(n, p, x)) <= TAU_FD * max(1.0, abs(d)), (n, p, x)


def test_reflect():
    r = reflect(classify(0.93, -1.9))
    assert (r.alpha, r.beta) == (-1.9, 0.93)
    assert r.regime is Regime.QUASI_ORDER1_MIRRORED
    assert reflect(classify(0, 0)) == classify(0, 0)


def test_reflection_identity_example():
    p = classify(2.35, -1.5)
    lhs = eval_sum(4, p, 0.7)
    rhs = eval_sum(4, reflect(p), -0.7)
    assert abs(lhs - rhs) <= TAU_EVAL * max(1.0, abs(lhs))


def test_vector_and_scalar_agree():
    p = classify(8.3, -1.55)
    xs = np.array([-1.2, 0.1, 0.95])
    vec = eval_recurrence(11, p, xs)
    assert np.array_equal(vec, np.array([eval_recurrence(11, p, x) for x in xs]))
