import itertools
import math

import numpy as np
import pytest

from interlace import (
    BadProportions,
    EpsilonOutOfRange,
    LyapunovInstance,
    NotPSD,
    SumExceedsIdentity,
    WeightOutOfRange,
    ensemble,
    ks_r_partition,
    lyapunov_select,
    make_hermitian,
    mixed_bound_reference,
    operator_norm,
    partition_two_sided_deviations,
    weighted_approx,
)
from interlace.generate import covering_ensemble, trace_capped_ensemble
from interlace.lyapunov import subset_convolve


def diag(*vals):
    return np.diag(np.array(vals, dtype=float))


def test_lyapunov_single_matrix():
    sel = lyapunov_select(LyapunovInstance.make([diag(0.25, 0.0)], [0.5]))
    assert sel.indices in ((), (0,))
    assert sel.achieved == pytest.approx(0.125)
    assert sel.bound == pytest.approx(1.0)


def test_lyapunov_forced_inclusion_and_exclusion():
    E = [diag(0.3, 0.0), diag(0.0, 0.2)]
    sel = lyapunov_select(LyapunovInstance.make(E, [1.0, 1.0]))
    assert sel.indices == (0, 1)
    assert sel.achieved == pytest.approx(0.0)
    sel = lyapunov_select(LyapunovInstance.make(E, [0.0, 0.0]))
    assert sel.indices == ()
    assert sel.achieved == pytest.approx(0.0)


def test_lyapunov_validation():
    with pytest.raises(WeightOutOfRange):
        LyapunovInstance.make([diag(0.25, 0.0)], [1.5])
    with pytest.raises(NotPSD):
        LyapunovInstance.make([diag(0.25, -0.1)], [0.5])
    with pytest.raises(SumExceedsIdentity):
        LyapunovInstance.make([diag(2.0, 0.0)], [0.5])


def test_weighted_approx_boundary_rejection():
    with pytest.raises(WeightOutOfRange):
        weighted_approx([diag(0.25, 0.0)], 0.0)
    with pytest.raises(WeightOutOfRange):
        weighted_approx([diag(0.25, 0.0)], 1.0)


def test_weighted_approx_reports_both_bounds():
    E = [diag(0.25, 0.0), diag(0.0, 0.25)]
    res = weighted_approx(E, 0.5)
    assert res.bound == pytest.approx(1.0)
    assert res.bound_alternate == pytest.approx(2 * math.sqrt(0.5) + 0.5)
    assert res.achieved <= min(res.bound, res.bound_alternate) + 1e-7


def test_weighted_approx_identity_partition():
    # eps = 1, so the selection bound is 2
    E = [diag(1, 0), diag(0, 1)]
    res = weighted_approx(E, 0.5)
    assert res.bound == pytest.approx(2.0)
    assert res.achieved <= 2.0 + 1e-7


def test_subset_convolve_matches_enumeration():
    rng = np.random.default_rng(0)
    n = 5
    tables = [rng.standard_normal(1 << n) for _ in range(3)]
    fast = subset_convolve(tables, n)
    for S in range(1 << n):
        bits = [i for i in range(n) if S >> i & 1]
        total = 0.0
        for asg in itertools.product(range(3), repeat=len(bits)):
            masks = [0, 0, 0]
            for b, a in zip(bits, asg):
                masks[a] |= 1 << b
            total += tables[0][masks[0]] * tables[1][masks[1]] * tables[2][masks[2]]
        assert fast[S] == pytest.approx(total, rel=1e-9, abs=1e-9)


def test_ks_r_single_block():
    E = ensemble([diag(0.5, 0.0), diag(0.0, 0.5)])
    res = ks_r_partition(E, [1.0])
    assert res.blocks == ((0, 1),)
    assert res.block_norms[0] == pytest.approx(0.5)
    assert res.upper_cert == (True,)
    eps = res.epsilon
    assert res.bounds[0] == pytest.approx((1 + math.sqrt(eps)) ** 2)


def test_ks_r_identity_partition_all_splits_valid():
    # every partition of {diag(1,0), diag(0,1)} has block norms <= 1
    E = ensemble([diag(1, 0), diag(0, 1)])
    res = ks_r_partition(E, [0.5, 0.5])
    for nm, bd, ok in zip(res.block_norms, res.bounds, res.upper_cert):
        assert ok and nm <= bd + 1e-7
    assert res.bounds[0] == pytest.approx(0.5 * (1 + math.sqrt(2.0)) ** 2)


def test_ks_r_random_rank_one_instance():
    rng = np.random.default_rng(5)
    vecs = [rng.standard_normal(3) + 1j * rng.standard_normal(3) for _ in range(8)]
    mats = [np.outer(v, v.conj()) for v in vecs]
    mats = [M / (4.0 * float(np.trace(M).real)) for M in mats]  # traces 1/4
    total = sum(mats[1:], mats[0].copy())
    nrm = operator_norm(make_hermitian(total, tol=np.inf))
    mats = [M / max(1.0, nrm) for M in mats]
    res = ks_r_partition(ensemble(mats, tol=np.inf), [0.5, 0.5])
    for k, block in enumerate(res.blocks):
        s = sum((mats[i] for i in block), np.zeros((3, 3), dtype=complex))
        # independent eigensolve of the block sum
        direct = operator_norm(make_hermitian(s, tol=np.inf))
        assert direct == pytest.approx(res.block_norms[k], abs=1e-10)
        assert direct <= res.bounds[k] + 1e-7


def test_ks_r_blocks_always_partition():
    rng = np.random.default_rng(6)
    E = covering_ensemble(rng, 3, 6, 0.85)
    res = ks_r_partition(E, [0.3, 0.3, 0.4])
    assert sorted(i for b in res.blocks for i in b) == list(range(6))
    devs = partition_two_sided_deviations(E, res)
    spread = 2 * math.sqrt(3 * res.epsilon) + 3 * res.epsilon
    assert all(x <= spread + 1e-7 for x in devs)


def test_ks_r_exact_cover_needs_no_completion():
    # sum A_i = I exactly: the residual completion is empty
    rng = np.random.default_rng(8)
    E = covering_ensemble(rng, 2, 4, 1.0)
    res = ks_r_partition(E, [0.5, 0.5])
    assert sorted(i for b in res.blocks for i in b) == list(range(4))
    assert all(res.upper_cert)


def test_ks_r_size_guard_after_completion():
    from interlace import SizeGuard

    # 12 matrices plus a multi-piece completion exceeds the index guard
    rng = np.random.default_rng(9)
    E = trace_capped_ensemble(rng, 4, 12, 0.08)
    with pytest.raises(SizeGuard):
        ks_r_partition(E, [0.5, 0.5])


def test_ks_r_validation():
    E = ensemble([diag(0.5, 0.0)])
    with pytest.raises(BadProportions):
        ks_r_partition(E, [0.7, 0.7])
    with pytest.raises(BadProportions):
        ks_r_partition(E, [])
    with pytest.raises(NotPSD):
        ks_r_partition(ensemble([diag(0.5, -0.1)]), [1.0])
    with pytest.raises(SumExceedsIdentity):
        ks_r_partition(ensemble([diag(1.5, 0.0)]), [1.0])


def test_mixed_bound_reference_values():
    E = ensemble([diag(0.25, 0.0)])
    assert mixed_bound_reference(E) == pytest.approx(2.25)
    assert mixed_bound_reference(E, 2) == pytest.approx((math.sqrt(0.75) + 0.5) ** 2)
    with pytest.raises(EpsilonOutOfRange):
        mixed_bound_reference(E, 1)


def test_mixed_bound_reference_epsilon_range():
    # (k-1)^2/k = 1/2 for k = 2; eps = 0.6 is out of range
    E = ensemble([diag(0.6, 0.0)])
    with pytest.raises(EpsilonOutOfRange):
        mixed_bound_reference(E, 2)


def test_mixed_bound_reference_rank_check():
    rng = np.random.default_rng(7)
    E = trace_capped_ensemble(rng, 4, 3, 0.4)  # full-rank matrices
    with pytest.raises(ValueError):
        mixed_bound_reference(E, 2)
