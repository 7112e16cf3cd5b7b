import numpy as np
import pytest

from interlace import (
    BadDelta,
    BarrierPoint,
    NotAboveRoots,
    NotPSD,
    QxNormalizationViolated,
    ag_condition,
    barrier_shape_check,
    barrier_value,
    ensemble,
    qx_certificate,
)
from interlace.generate import qx_normalized_ensemble, random_psd


def diag(*vals):
    return np.diag(np.array(vals, dtype=float))


def test_barrier_value_scalar():
    pt = BarrierPoint.make([diag(1.0)], 2.0)
    assert barrier_value(pt, 0) == pytest.approx(0.5)


def test_barrier_value_identity():
    d, alpha = 3, 1.7
    pt = BarrierPoint.make([np.eye(d)], alpha)
    assert barrier_value(pt, 0) == pytest.approx(d / alpha)


def test_barrier_value_zero_matrix():
    pt = BarrierPoint.make([diag(1.0, 0.0), np.zeros((2, 2))], 2.0)
    assert barrier_value(pt, 1) == pytest.approx(0.0)


def test_barrier_value_below_roots_rejected():
    pt = BarrierPoint.make([diag(1.0)], -1.0)
    with pytest.raises(NotAboveRoots):
        barrier_value(pt, 0)


def test_barrier_point_requires_psd():
    with pytest.raises(NotPSD):
        BarrierPoint.make([diag(1.0, -1.0)], 2.0)


def test_shape_check_closed_form():
    # Phi(t) = 1/(2+t): values 1/2, 1/3, 1/4 on {0,1,2}
    pt = BarrierPoint.make([diag(1.0)], 2.0)
    rep = barrier_shape_check(pt, 0, [0.0, 1.0, 2.0])
    np.testing.assert_allclose(rep.values, [0.5, 1 / 3, 0.25])
    assert rep.passed


def test_shape_check_zero_ensemble():
    pt = BarrierPoint.make([np.zeros((2, 2))], 1.0)
    rep = barrier_shape_check(pt, 0, [0.0, 1.0])
    np.testing.assert_allclose(rep.values, [0.0, 0.0], atol=1e-12)
    assert rep.passed


def test_shape_check_identity_pair():
    pt = BarrierPoint.make([np.eye(2)], 1.0)
    rep = barrier_shape_check(pt, 0, [0.0, 1.0])
    np.testing.assert_allclose(rep.values, [2.0, 1.0])
    assert rep.nonincreasing


def test_shape_check_random(seed=3):
    rng = np.random.default_rng(seed)
    for _ in range(30):
        d = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        E = ensemble([random_psd(rng, d, trace=0.6) for _ in range(m)], tol=np.inf)
        pt = BarrierPoint.make(E, float(rng.uniform(0.5, 2.0)), rng.uniform(0, 1, size=m))
        assert barrier_shape_check(pt, int(rng.integers(0, m))).passed


def test_ag_condition():
    assert ag_condition(0.7, 0.0, 1.0)  # c = 0 always passes
    assert ag_condition(0.5, 1.0, 2.0)  # 1/2 + 1/4 <= 1
    assert not ag_condition(1.0, 1.0, 1.0)  # 2 + 1 > 1
    with pytest.raises(BadDelta):
        ag_condition(0.5, 1.0, 0.0)


def test_qx_certificate_boundary_case():
    cert = qx_certificate(ensemble([diag(1.0)]))
    assert cert.passed
    assert cert.deltas == (2.0,)
    assert cert.corner_min_eig == pytest.approx(2.0)
    assert cert.phis[0] == pytest.approx(1.0)  # attains the bound tr(B) = 1


def test_qx_certificate_zero_matrix():
    cert = qx_certificate(ensemble([np.zeros((2, 2))]))
    assert cert.passed
    assert cert.phis == (0.0,)


def test_qx_certificate_rejects_large_trace():
    with pytest.raises(QxNormalizationViolated):
        qx_certificate(ensemble([diag(1.5)]))


def test_qx_certificate_random(seed=4):
    rng = np.random.default_rng(seed)
    for _ in range(30):
        E = qx_normalized_ensemble(rng, int(rng.integers(1, 5)), int(rng.integers(1, 6)))
        assert qx_certificate(E).passed
