import numpy as np
import pytest

import qjacobi.relations as R
from qjacobi.core import classify
from qjacobi.errors import InvalidParameter, UnresolvedRelation
from qjacobi.relations import (
    TAU_REL,
    RelationId,
    calibrate_n2b3,
    k_constants,
    k_form_residual,
    mixed_relation_coeffs,
    mixed_relation_residual,
    relation_terms,
)
from qjacobi.zeros import askey_delta

from conftest import grid


def test_r217_example_with_sum():
    assert abs(mixed_relation_residual("R217", 5, classify(2.35, -1.5), 0.4, method="sum")) < 1e-10


def test_rfo_at_minus_one():
    p = classify(0.93, -1.9)
    terms = relation_terms("Rfo", 3, p, -1.0)
    assert terms[0] == 0.0
    assert abs(mixed_relation_residual("Rfo", 3, p, -1.0)) < 1e-10


def test_r51_at_threshold():
    n, p = 5, classify(2.35, -1.9)
    d = askey_delta(n, p)
    assert d == pytest.approx(-0.855422, abs=1e-6)
    a, b = p.alpha, p.beta
    assert abs(2 * (b + 1) + (d + 1) * (a + b + 2 * n + 2)) < 1e-14
    assert abs(mixed_relation_residual("R51", n, p, d)) < 1e-10


@pytest.mark.parametrize("rid", list(RelationId))
def test_relations_on_grid_sample(rid):
    rng = np.random.default_rng(7)
    for n, p in grid(3, 20):
        if n % 4:
            continue
        xs = rng.uniform(-3, 3, 10)
        terms = np.array(relation_terms(rid, n, p, xs))
        res = np.abs(terms.sum(axis=0)) / np.abs(terms).max(axis=0)
        assert res.max() < TAU_REL, (rid, n, p)


@pytest.mark.parametrize("rid", list(RelationId))
def test_relations_recurrence_matches_sum(rid):
    p = classify(0.93, -1.55)
    for x in (-1.7, -0.2, 0.6):
        assert abs(mixed_relation_residual(rid, 6, p, x, method="sum")) < 1e-10


def test_min_degree():
    with pytest.raises(InvalidParameter):
        relation_terms("R217", 2, classify(0.93, -1.9), 0.1)
    with pytest.raises(InvalidParameter):
        relation_terms("R217", 5, classify(0.93, -1.9), 0.1, method="bogus")


def test_n2b3_calibration_unique():
    fits = calibrate_n2b3()
    good = [s for s, r in fits.items() if r < TAU_REL]
    assert good == [R.N2B3_SIGNS]
    assert all(r > 0.1 for s, r in fits.items() if s != R.N2B3_SIGNS)


def test_n2b3_unresolved(monkeypatch):
    monkeypatch.setattr(R, "N2B3_SIGNS", None)
    with pytest.raises(UnresolvedRelation):
        relation_terms("Rn2b3", 5, classify(0.93, -1.9), 0.1)


def test_n2b4_printed_sign_fails():
    # flipping the P_n term back breaks the identity
    n, p, x = 7, classify(2.35, -1.55), 0.3
    t = relation_terms("Rn2b4", n, p, x)
    flipped = t[0] + t[1] - t[2]
    assert abs(flipped) / max(map(abs, t)) > 0.1
    assert abs(sum(t)) / max(map(abs, t)) < 1e-12


def test_k_form():
    for n, p in grid(3, 20):
        if n % 3 == 0:
            for x in (-1.5, -0.4, 0.8):
                assert abs(k_form_residual(n, p, x)) < TAU_REL


def test_k_constants_match_r217():
    n, p = 6, classify(2.35, -1.5)
    a, b = p.alpha, p.beta
    k1, k2, k3, k4 = k_constants(n, p)
    x = 0.37
    t = relation_terms("R217", n, p, x)
    from qjacobi.core import eval_recurrence as P
    assert t[0] == pytest.approx(k4 * P(n, p, x))
    assert t[1] == pytest.approx((1 + x) * k3 * P(n - 2, p.shifted(dbeta=1), x))
    assert t[2] == pytest.approx((k1 - (x + 1) * k2) * P(n - 1, p, x))
    assert k1 == 2 * (b + n) * (a + b + n)


def test_mixed_coeffs_closed_forms():
    n, p = 15, classify(0.93, -1.9)
    a, b = p.alpha, p.beta
    m = mixed_relation_coeffs(n, p)
    assert m.E_n == pytest.approx((2 * n + a + b) * (n + a - 1) * (n + a + b + 1) * (n + a + b + 2))
    assert m.A_n == pytest.approx(2 * (b + 1) / (2 * n + a + b))
    assert m.D_n == pytest.approx(2 * (b + 1) * (b + 3))
