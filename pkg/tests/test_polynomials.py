import numpy as np
import pytest

from interlace import NotMonic, NotRealRooted, RealPolynomial, maxroot_certified, reflect, root_report, root_scaling


def P(*coeffs):
    return RealPolynomial.from_coeffs(coeffs)


def test_mul_difference_of_squares():
    assert (P(-1, 1) * P(1, 1)).coeffs == (-1.0, 0.0, 1.0)


def test_scale():
    assert P(-1, 0, 1).scale(2).coeffs == (-2.0, 0.0, 2.0)


def test_compose_affine_shift():
    # x^2 composed with x - 1 gives (x-1)^2
    assert P(0, 0, 1).compose_affine(1.0, -1.0).coeffs == (1.0, -2.0, 1.0)


def test_add_sub_zero():
    p = P(1, 2, 3)
    assert (p - p).is_zero
    assert (p + P()).coeffs == p.coeffs


def test_reflect_examples():
    assert P(-2, 1).reflect().coeffs == (2.0, 1.0)
    assert P(-1, 0, 1).reflect().coeffs == (-1.0, 0.0, 1.0)
    assert P(3, -4, 1).reflect().coeffs == (3.0, 4.0, 1.0)


def test_reflect_involution_exact():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p = RealPolynomial.from_coeffs(rng.uniform(-3, 3, size=int(rng.integers(1, 9))))
        if p.is_zero:
            continue
        assert reflect(reflect(p)).coeffs == p.coeffs


def test_root_scaling_examples():
    assert root_scaling(P(-1, 1), 3.0).coeffs == (-3.0, 1.0)
    assert root_scaling(P(-1, 0, 1), 2.0).coeffs == (-4.0, 0.0, 1.0)
    assert root_scaling(P(0, 0, 1), 5.0).coeffs == (0.0, 0.0, 1.0)
    with pytest.raises(NotMonic):
        root_scaling(P(1, 2), 2.0)


def test_root_scaling_maxroot_property():
    rng = np.random.default_rng(1)
    for _ in range(100):
        roots = rng.uniform(-3, 3, size=int(rng.integers(1, 7)))
        p = RealPolynomial.from_coeffs(np.poly(roots)[::-1])
        mr = root_report(p, 1e-6).maxroot
        for t in (0.1, 2.0, 10.0):
            got = root_report(root_scaling(p, t), 1e-6).maxroot
            assert got == pytest.approx(t * mr, rel=1e-8, abs=1e-8)


def test_root_report_repeated_root():
    rep = root_report(P(1, -2, 1))
    assert rep.real_rooted
    assert rep.maxroot == pytest.approx(1.0, abs=1e-9)


def test_root_report_complex_case():
    rep = root_report(P(2, 0, 1))  # roots +-i sqrt(2)
    assert not rep.real_rooted
    assert rep.max_imag_residual == pytest.approx(np.sqrt(2), abs=1e-9)


def test_root_report_trace_monomial_case():
    # x^(d-1) (x - tau), d = 3, tau = 2
    p = P(0, 0, -2, 1)
    rep = root_report(p)
    assert rep.real_rooted
    assert rep.maxroot == pytest.approx(2.0, abs=1e-9)
    assert rep.minroot == pytest.approx(0.0, abs=1e-12)


def test_root_report_rejects_constants():
    with pytest.raises(ValueError):
        root_report(P(3.0))


def test_maxroot_certified_examples():
    assert maxroot_certified(P(1, -2, 1), 1e-10) == pytest.approx(1.0, abs=1e-9)
    assert maxroot_certified(P(-4, 0, 1), 1e-10) == pytest.approx(2.0, abs=1e-9)
    with pytest.raises(NotRealRooted):
        maxroot_certified(P(2, 0, 1))


def test_maxroot_certified_matches_companion():
    # separated roots: agreement at 1e-9 is not achievable for companion
    # methods at near-multiple roots, which is why certification exists
    rng = np.random.default_rng(2)
    for _ in range(100):
        deg = int(rng.integers(1, 8))
        roots = rng.choice(np.arange(-6, 7), size=deg, replace=False) + rng.uniform(-0.2, 0.2, deg)
        p = RealPolynomial.from_coeffs(np.poly(roots)[::-1])
        a = maxroot_certified(p, 1e-10, rootedness_tol=1e-6)
        b = root_report(p, 1e-6).maxroot
        assert a == pytest.approx(b, abs=1e-9)


def test_maxroot_certified_multiple_root_cluster():
    # (x-1)^3 (x+2): companion roots of the triple cluster spread, the
    # certified value may not
    p = RealPolynomial.from_coeffs(np.poly([1.0, 1.0, 1.0, -2.0])[::-1])
    assert maxroot_certified(p, 1e-10, rootedness_tol=1e-6) == pytest.approx(1.0, abs=1e-5)
    rep = root_report(p, 1e-7)
    assert rep.real_rooted  # realness rescue covers the noisy triple root


def test_derivative_shift_property():
    # x0 above the roots of p + c p' implies x0 + c above the roots of p
    rng = np.random.default_rng(3)
    for _ in range(100):
        roots = rng.uniform(-3, 3, size=int(rng.integers(2, 7)))
        p = RealPolynomial.from_coeffs(np.poly(roots)[::-1])
        c = float(rng.choice([-0.5, 0.5, 1.0]))
        q = p + p.derivative().scale(c)
        x0 = root_report(q, 1e-6).maxroot + 1e-6
        assert root_report(p, 1e-6).maxroot <= x0 + c + 1e-9
