"""End-to-end discrepancy solvers for PSD and hermitian ensembles.

Given jointly independent finite-support variables xi_i and PSD matrices
A_i, the solver centers and rescales the variables, descends the product
interlacing family, and returns an outcome with

    || sum_i (s_i - E[xi_i]) A_i ||  <=  4 sigma,

where sigma^2 = max(max_i var(xi_i) tr(A_i)^2, ||sum_i var(xi_i) tr(A_i) A_i||).
Hermitian inputs go through a block-diagonal PSD lift of their positive and
negative parts at the cost of a factor 2 in the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .descent import DescentCertificate, FiniteDistribution, greedy_descent_quadratic
from .errors import NotPSD
from .linalg import (
    MatrixEnsemble,
    as_hermitian,
    absolute_value,
    is_psd,
    make_hermitian,
    operator_norm,
    positive_negative_parts,
)
from .mixedchar import SubsetTable

RESULT_SLACK = 1e-7


@dataclass(frozen=True)
class DiscrepancyInstance:
    """PSD ensemble paired with one finite distribution per matrix."""

    ensemble: MatrixEnsemble
    dists: tuple[FiniteDistribution, ...]

    def __post_init__(self) -> None:
        if len(self.dists) != len(self.ensemble):
            raise ValueError("one distribution per matrix required")
        for k, H in enumerate(self.ensemble):
            if not is_psd(H):
                raise NotPSD(f"matrix {k} is not PSD")

    @classmethod
    def make(cls, matrices, dists) -> "DiscrepancyInstance":
        ens = matrices if isinstance(matrices, MatrixEnsemble) else MatrixEnsemble.from_arrays(matrices)
        return cls(ens, tuple(dists))


@dataclass(frozen=True)
class DiscrepancyResult:
    """Outcome values, the recomputed norm, and the certificate chain.

    ``achieved`` is always recomputed from the outcome by a direct
    eigensolve; ``bound`` is 4 sigma (8 sigma on the hermitian path).
    """

    outcome: tuple[float, ...]
    achieved: float
    sigma: float
    bound: float
    certificate: DescentCertificate


def sigma_bound(inst: DiscrepancyInstance) -> float:
    """sigma = sqrt(max(max_i var tr(A_i)^2, ||sum var tr(A_i) A_i||))."""
    d = inst.ensemble.dim
    term1 = 0.0
    total = np.zeros((d, d), dtype=np.complex128)
    for H, dist in zip(inst.ensemble, inst.dists):
        var = dist.variance()
        tr = H.trace()
        term1 = max(term1, var * tr * tr)
        total = total + var * tr * H.entries
    term2 = operator_norm(make_hermitian(total, tol=np.inf))
    return float(np.sqrt(max(term1, term2)))


def two_point_reduction(dist: FiniteDistribution) -> FiniteDistribution:
    """Shift probability mass to the support values bracketing the mean.

    Preserves the mean, never increases the variance, and keeps values in
    the original positive-probability support.  A mean landing on a support
    point collapses to the point mass there.
    """
    mu = dist.mean()
    support = dist.support()
    if len(support) <= 2:
        if len(support) == len(dist.values):
            return dist
        keep = [(v, p) for v, p in zip(dist.values, dist.probs) if p > 0]
        return FiniteDistribution.make([v for v, _ in keep], [p for _, p in keep])
    scale = max(1.0, max(abs(v) for v in support))
    for v in support:
        if abs(v - mu) <= 1e-12 * scale:
            return FiniteDistribution.point_mass(v)
    lower = max(v for v in support if v < mu)
    upper = min(v for v in support if v > mu)
    p_low = (upper - mu) / (upper - lower)
    return FiniteDistribution.make([lower, upper], [p_low, 1.0 - p_low])


def _degenerate_outcome(dists: Sequence[FiniteDistribution]) -> tuple[float, ...]:
    out = []
    for dist in dists:
        support = dist.support()
        mu = dist.mean()
        best = min(support, key=lambda v: (abs(v - mu), v))
        out.append(best)
    return tuple(out)


def _recompute_achieved(
    matrices: Sequence, dists: Sequence[FiniteDistribution], outcome: Sequence[float]
) -> float:
    H0 = as_hermitian(matrices[0])
    total = np.zeros((H0.dim, H0.dim), dtype=np.complex128)
    for H, dist, s in zip(matrices, dists, outcome):
        total = total + (s - dist.mean()) * as_hermitian(H).entries
    return operator_norm(make_hermitian(total, tol=np.inf))


def solve_kls(
    inst: DiscrepancyInstance,
    reduce: bool = True,
    table: SubsetTable | None = None,
) -> DiscrepancyResult:
    """Constructive 4-sigma discrepancy for PSD ensembles.

    Optionally reduces every variable to two points, centers it, rescales by
    1/sigma, and runs the quadratic greedy descent.  With sigma = 0 the
    instance is deterministic (or supported on zero matrices) and the
    answer is immediate with achieved = 0.
    """
    sigma = sigma_bound(inst)
    dists = tuple(two_point_reduction(d) for d in inst.dists) if reduce else inst.dists
    if reduce:
        sigma = sigma_bound(DiscrepancyInstance(inst.ensemble, dists))
    m = len(inst.ensemble)
    if sigma == 0.0:
        outcome = _degenerate_outcome(dists)
        achieved = _recompute_achieved(inst.ensemble.matrices, inst.dists, outcome)
        cert = DescentCertificate(outcome, (0.0,) * (m + 1), (0.0,) * m)
        return DiscrepancyResult(outcome, achieved, 0.0, 0.0, cert)
    scaled = []
    back = []
    for dist in dists:
        mu = dist.mean()
        vals = tuple((v - mu) / sigma for v in dist.values)
        scaled.append(FiniteDistribution(vals, dist.probs))
        back.append({w: v for w, v in zip(vals, dist.values)})
    cert = greedy_descent_quadratic(inst.ensemble, scaled, table=table)
    outcome = tuple(back[i][w] for i, w in enumerate(cert.assignment))
    achieved = _recompute_achieved(inst.ensemble.matrices, inst.dists, outcome)
    return DiscrepancyResult(outcome, achieved, sigma, 4.0 * sigma, cert)


def solve_hermitian(
    matrices, dists: Sequence[FiniteDistribution], reduce: bool = True
) -> DiscrepancyResult:
    """8-sigma discrepancy for hermitian (not necessarily PSD) matrices.

    sigma is computed with |B_i| in place of A_i; the solver runs on the
    2d x 2d block-diagonal lift diag((B_i)+, (B_i)-) and the outcome is
    evaluated on the original matrices.
    """
    mats = [as_hermitian(M) for M in matrices]
    dists = tuple(dists)
    if len(dists) != len(mats):
        raise ValueError("one distribution per matrix required")
    d = mats[0].dim
    term1 = 0.0
    total = np.zeros((d, d), dtype=np.complex128)
    for B, dist in zip(mats, dists):
        var = dist.variance()
        absB = absolute_value(B)
        tr = absB.trace()
        term1 = max(term1, var * tr * tr)
        total = total + var * tr * absB.entries
    sigma = float(np.sqrt(max(term1, operator_norm(make_hermitian(total, tol=np.inf)))))
    lifted = []
    for B in mats:
        pos, neg = positive_negative_parts(B)
        block = np.zeros((2 * d, 2 * d), dtype=np.complex128)
        block[:d, :d] = pos.entries
        block[d:, d:] = neg.entries
        lifted.append(make_hermitian(block, tol=np.inf))
    inner = solve_kls(DiscrepancyInstance.make(lifted, dists), reduce=reduce)
    achieved = _recompute_achieved(mats, dists, inner.outcome)
    return DiscrepancyResult(inner.outcome, achieved, sigma, 8.0 * sigma, inner.certificate)
