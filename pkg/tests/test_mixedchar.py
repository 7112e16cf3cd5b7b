import numpy as np
import pytest

from interlace import (
    DerivativeSpec,
    SizeGuard,
    SubsetTable,
    ensemble,
    expected_product_poly,
    mixed_char_poly,
    quadratic_mixed_char_poly,
    root_report,
    subset_derivative,
    truncated_ring_oracle,
)
from interlace.generate import random_psd


def diag(*vals):
    return np.diag(np.array(vals, dtype=float))


def test_subset_derivative_empty_set():
    E = ensemble([diag(1, -1), diag(-1, 1)])
    assert subset_derivative(E, []).coeffs == (0.0, 0.0, 1.0)


def test_subset_derivative_single_is_trace_times_x():
    # det(xI + z A) with A = diag(a1, a2) expands to (x + z a1)(x + z a2);
    # the z coefficient at z = 0 is (a1 + a2) x
    E = ensemble([diag(2.0, 3.0)])
    assert subset_derivative(E, [0]).coeffs == (0.0, 5.0)


def test_subset_derivative_pair_identity_partition():
    # coefficient of z1 z2 in (x + z1)(x + z2) is 1
    E = ensemble([diag(1, 0), diag(0, 1)])
    assert subset_derivative(E, [0, 1]).coeffs == (1.0,)


def test_subset_derivative_oversize_is_zero():
    E = ensemble([diag(1.0), diag(2.0)])
    assert subset_derivative(E, [0, 1]).is_zero


def test_mixed_char_poly_non_real_rooted_pair():
    E = ensemble([diag(1, -1), diag(-1, 1)])
    p = mixed_char_poly(E, [1.0, 1.0])
    assert p.coeffs == (2.0, 0.0, 1.0)
    assert not root_report(p).real_rooted


def test_mixed_char_poly_single_matrix_trace():
    assert mixed_char_poly(ensemble([diag(2.0)]), [1.0]).coeffs == (-2.0, 1.0)


def test_mixed_char_poly_identity_partition():
    # x^2 - D_1 - D_2 + D_12 = (x - 1)^2
    p = mixed_char_poly(ensemble([diag(1, 0), diag(0, 1)]), [1.0, 1.0])
    assert p.coeffs == (1.0, -2.0, 1.0)


def test_expected_product_centered_single():
    # pairs: (empty, empty) -> x^2 and ({1},{1}) -> -1
    E = ensemble([diag(1.0)])
    p = expected_product_poly(E, DerivativeSpec((0.0,), (0.0,), (-1.0,)))
    assert p.coeffs == (-1.0, 0.0, 1.0)


def test_expected_product_centered_identity_2x2():
    # (x+z)^2 (x+w)^2 with the cross term 2x * 2x
    E = ensemble([np.eye(2)])
    p = expected_product_poly(E, DerivativeSpec((0.0,), (0.0,), (-1.0,)))
    assert p.coeffs == (0.0, 0.0, -4.0, 0.0, 1.0)


def test_expected_product_fixed_value_is_two_sided_product():
    # spec (-s, s, -s^2) with s = 1 on diag(1): mu[A] mu[-A] = (x-1)(x+1)
    E = ensemble([diag(1.0)])
    p = expected_product_poly(E, DerivativeSpec((-1.0,), (1.0,), (-1.0,)))
    A = mixed_char_poly(E, [1.0])
    B = mixed_char_poly(E, [-1.0])
    assert p.coeffs == (A * B).coeffs == (-1.0, 0.0, 1.0)


def test_quadratic_examples():
    assert quadratic_mixed_char_poly(ensemble([diag(1.0)])).coeffs == (-1.0, 0.0, 1.0)
    p = quadratic_mixed_char_poly(ensemble([np.eye(2)]))
    assert p.coeffs == (0.0, 0.0, -4.0, 0.0, 1.0)
    assert root_report(p).maxroot == pytest.approx(2.0, abs=1e-9)
    assert quadratic_mixed_char_poly(ensemble([np.zeros((2, 2))])).coeffs == (0, 0, 0, 0, 1.0)


def test_oracle_examples():
    E = ensemble([diag(1, -1), diag(-1, 1)])
    assert truncated_ring_oracle(E, scalars=[1.0, 1.0]).coeffs == (2.0, 0.0, 1.0)
    E2 = ensemble([diag(1, 0), diag(0, 1)])
    assert truncated_ring_oracle(E2, scalars=[1.0, 1.0]).coeffs == (1.0, -2.0, 1.0)
    E3 = ensemble([diag(1.0)])
    spec = DerivativeSpec((0.0,), (0.0,), (-1.0,))
    assert truncated_ring_oracle(E3, spec=spec).coeffs == (-1.0, 0.0, 1.0)


def test_oracle_guards():
    big = ensemble([np.eye(5)])
    with pytest.raises(SizeGuard):
        truncated_ring_oracle(big, scalars=[1.0])
    with pytest.raises(ValueError):
        truncated_ring_oracle(ensemble([diag(1.0)]))


def test_fast_path_guard():
    with pytest.raises(SizeGuard):
        SubsetTable.build(ensemble([np.eye(11)]))


def test_oracle_equivalence_complex_hermitian():
    rng = np.random.default_rng(4)
    for _ in range(25):
        d = int(rng.integers(1, 5))
        m = int(rng.integers(1, 5))
        E = ensemble([random_psd(rng, d, trace=float(rng.uniform(0.2, 1.5))) for _ in range(m)], tol=np.inf)
        scalars = rng.uniform(-1.5, 1.5, size=m)
        fast = mixed_char_poly(E, scalars)
        slow = truncated_ring_oracle(E, scalars=scalars)
        np.testing.assert_allclose(fast.coeffs, slow.coeffs, rtol=1e-8, atol=1e-10)


def test_table_is_shared_and_consistent():
    rng = np.random.default_rng(6)
    E = ensemble([random_psd(rng, 3) for _ in range(3)], tol=np.inf)
    table = SubsetTable.build(E)
    a = mixed_char_poly(E, [1.0, -1.0, 1.0], table)
    b = mixed_char_poly(E, [1.0, -1.0, 1.0])
    assert a.coeffs == b.coeffs


def test_stability_safe_flag():
    spec = DerivativeSpec((-1.0, 0.0), (1.0, 0.0), (-1.0, -0.5))
    assert spec.stability_safe == (True, True)
    # a = -b but a^2 > -c
    spec = DerivativeSpec((-2.0,), (2.0,), (-1.0,))
    assert spec.stability_safe == (False,)


def test_mixed_operator_below_diagonal_operator_single_index():
    # For one matrix B the two second-order restrictions have closed forms in
    # the elementary symmetric functions e_k of the spectrum:
    #   (1 - dz dw)          -> x^(2d) - e1^2 x^(2d-2)
    #   (1 - (1/2) dz^2)|w=z -> x^(2d) - (e1^2 + 2 e2) x^(2d-2)
    # so the mixed restriction never has the larger max root (e2 >= 0).
    rng = np.random.default_rng(8)
    for _ in range(50):
        d = int(rng.integers(2, 6))
        B = random_psd(rng, d, trace=float(rng.uniform(0.2, 2.0)))
        w = np.linalg.eigvalsh(B)
        e1 = float(np.sum(w))
        e2 = float(sum(w[i] * w[j] for i in range(d) for j in range(i + 1, d)))
        mixed = quadratic_mixed_char_poly(ensemble([B], tol=np.inf))
        diag_coeffs = np.zeros(2 * d + 1)
        diag_coeffs[2 * d] = 1.0
        diag_coeffs[2 * d - 2] = -(e1 * e1 + 2 * e2)
        diag_poly = [float(c) for c in diag_coeffs]
        mr_mixed = root_report(mixed, 1e-7).maxroot
        from interlace import RealPolynomial

        mr_diag = root_report(RealPolynomial.from_coeffs(diag_poly), 1e-7).maxroot
        assert mr_diag > 0  # the diagonal max-root point is above x^(2d)'s roots
        assert mr_mixed <= mr_diag + 1e-7
        assert mr_mixed == pytest.approx(e1, abs=1e-8)
