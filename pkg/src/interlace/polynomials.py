"""Univariate real polynomials, real-rootedness testing, certified max roots.

Coefficients are stored in ascending degree order. Roots come from the
companion matrix with one Newton polish step; the extreme root is then
re-certified by bisection on a sign predicate that is robust to multiple
roots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotMonic, NotRealRooted, NumericalFailure

DEFAULT_ROOT_TOL = 1e-9
# Relative coefficient distance at which a polynomial with a noisy complex
# root cluster is accepted as real-rooted (see root_report).
REALITY_RESCUE_TOL = 1e-8


@dataclass(frozen=True)
class RealPolynomial:
    """Real-coefficient polynomial; () is the zero polynomial (degree -1)."""

    coeffs: tuple[float, ...]

    @classmethod
    def from_coeffs(cls, seq) -> "RealPolynomial":
        c = [float(x) for x in seq]
        while c and c[-1] == 0.0:
            c.pop()
        return cls(tuple(c))

    @classmethod
    def monomial(cls, k: int, coeff: float = 1.0) -> "RealPolynomial":
        return cls.from_coeffs([0.0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> float:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self, tol: float = 1e-9) -> bool:
        if self.is_zero:
            return False
        scale = max(1.0, max(abs(c) for c in self.coeffs))
        return abs(self.leading() - 1.0) <= tol * scale

    def __call__(self, x: float) -> float:
        v = 0.0
        for c in reversed(self.coeffs):
            v = v * x + c
        return v

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return RealPolynomial.from_coeffs(a)

    def __sub__(self, other: "RealPolynomial") -> "RealPolynomial":
        return self + other.scale(-1.0)

    def __mul__(self, other: "RealPolynomial") -> "RealPolynomial":
        if self.is_zero or other.is_zero:
            return RealPolynomial(())
        return RealPolynomial.from_coeffs(np.convolve(self.coeffs, other.coeffs))

    def scale(self, t: float) -> "RealPolynomial":
        return RealPolynomial.from_coeffs([t * c for c in self.coeffs])

    def compose_affine(self, alpha: float, beta: float) -> "RealPolynomial":
        """p(alpha * x + beta) via Horner over the affine factor."""
        if self.is_zero:
            return self
        acc = np.array([self.coeffs[-1]])
        lin = np.array([beta, alpha])
        for c in reversed(self.coeffs[:-1]):
            acc = np.convolve(acc, lin)
            acc[0] += c
        return RealPolynomial.from_coeffs(acc)

    def derivative(self) -> "RealPolynomial":
        if self.degree < 1:
            return RealPolynomial(())
        return RealPolynomial.from_coeffs(
            [k * c for k, c in enumerate(self.coeffs)][1:]
        )

    def reflect(self) -> "RealPolynomial":
        """(-1)^d p(-x); negates every root, exactly on coefficients."""
        d = self.degree
        if d < 0:
            return self
        return RealPolynomial(
            tuple(c if (d - k) % 2 == 0 else -c for k, c in enumerate(self.coeffs))
        )


def reflect(p: RealPolynomial) -> RealPolynomial:
    return p.reflect()


def root_scaling(p: RealPolynomial, t: float) -> RealPolynomial:
    """t^d p(x / t): multiplies every root of a monic p by t > 0."""
    if t <= 0:
        raise ValueError("t must be positive")
    if not p.is_monic():
        raise NotMonic("root scaling is defined for monic polynomials")
    d = p.degree
    return RealPolynomial.from_coeffs(
        [c * t ** (d - k) for k, c in enumerate(p.coeffs)]
    )


@dataclass(frozen=True)
class RootReport:
    """Roots of a polynomial and the residual behind the realness decision."""

    maxroot: float
    minroot: float
    real_rooted: bool
    max_imag_residual: float
    roots: tuple[complex, ...] = ()


def _newton_polish(coeffs_desc: np.ndarray, deriv_desc: np.ndarray, r: complex) -> complex:
    p = np.polyval(coeffs_desc, r)
    dp = np.polyval(deriv_desc, r)
    if abs(dp) <= 1e-300 or abs(dp) * 1e12 < abs(p):
        return r
    step = p / dp
    if abs(step) > 1.0 + abs(r):
        return r
    return r - step


def root_report(p: RealPolynomial, tol: float = DEFAULT_ROOT_TOL) -> RootReport:
    """All roots via the companion matrix, one Newton step each.

    Real-rootedness holds when every |Im root| <= tol * (1 + max |root|).
    A polynomial whose complex parts come from a perturbed multiple root is
    still accepted when projecting the roots onto the real axis reproduces
    the coefficients to REALITY_RESCUE_TOL relative error.
    """
    if p.degree < 1:
        raise ValueError("root_report requires degree >= 1")
    asc = list(p.coeffs)
    nzeros = 0
    while asc and asc[0] == 0.0:
        asc.pop(0)
        nzeros += 1
    roots = [0.0 + 0.0j] * nzeros
    if len(asc) > 1:
        desc = np.array(asc[::-1], dtype=np.float64)
        try:
            raw = np.roots(desc)
        except np.linalg.LinAlgError as exc:
            raise NumericalFailure(f"companion eigensolver failed: {exc}") from exc
        deriv = np.polyder(desc)
        roots.extend(_newton_polish(desc, deriv, r) for r in raw)
    roots_arr = np.array(roots, dtype=np.complex128)
    max_mod = float(np.max(np.abs(roots_arr)))
    max_imag = float(np.max(np.abs(roots_arr.imag)))
    residual = max_imag
    real_rooted = max_imag <= tol * (1.0 + max_mod)
    if not real_rooted and max_imag <= 1e-3 * (1.0 + max_mod):
        # Noisy multiple roots spread into conjugate pairs (spread grows as
        # backward_error^(1/multiplicity)); accept when the real projection
        # reproduces the input coefficients essentially as well as the
        # computed roots themselves do (the round-trip baseline, which is
        # also conditioning-limited at such clusters).  Macroscopic
        # imaginary parts never reach this branch.
        given = np.array(p.coeffs[::-1], dtype=np.float64)
        scale = max(1.0, float(np.max(np.abs(given))))
        projected = np.poly(roots_arr.real) * p.leading()
        rel = float(np.max(np.abs(projected - given))) / scale
        baseline = float(np.max(np.abs(np.poly(roots_arr) * p.leading() - given))) / scale
        if rel <= max(REALITY_RESCUE_TOL, 4.0 * baseline) and baseline <= 1e-4:
            real_rooted = True
            residual = rel
            roots_arr = roots_arr.real.astype(np.complex128)
    re = np.sort(roots_arr.real)
    return RootReport(
        maxroot=float(re[-1]),
        minroot=float(re[0]),
        real_rooted=real_rooted,
        max_imag_residual=residual,
        roots=tuple(roots_arr.tolist()),
    )


def _derivative_chain(p: RealPolynomial) -> list[np.ndarray]:
    chain = []
    cur = np.array(p.coeffs[::-1], dtype=np.float64)
    while len(cur) > 1:
        chain.append(cur)
        cur = np.polyder(cur)
    return chain


def _eval_with_error(coeffs_desc: np.ndarray, x: float) -> tuple[float, float]:
    """Horner value and a running bound on its floating-point error."""
    v = 0.0
    s = 0.0
    ax = abs(x)
    for c in coeffs_desc:
        v = v * x + c
        s = s * ax + abs(c)
    n = len(coeffs_desc)
    return v, 4.0 * n * np.finfo(np.float64).eps * s


def _above_all_roots(chain: list[np.ndarray], x: float) -> bool:
    """x strictly above every root of p, decided through the derivative chain.

    Using all derivatives keeps the test well conditioned at multiple roots:
    the highest derivative vanishing there has a simple zero.
    """
    for coeffs in chain:
        v, err = _eval_with_error(coeffs, x)
        if v <= -err:
            return False
    return True


def cauchy_bound(p: RealPolynomial) -> float:
    lead = abs(p.leading())
    return 1.0 + max(abs(c) for c in p.coeffs[:-1]) / lead if p.degree >= 1 else 1.0


def maxroot_certified(
    p: RealPolynomial,
    tol: float = 1e-10,
    rootedness_tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """Largest root refined by bisection to within ``tol``.

    The bisection predicate asks for all derivatives to be positive, which
    flips exactly at the largest root and stays reliable under floating-point
    noise near multiple roots.
    """
    report = root_report(p, rootedness_tol)
    if not report.real_rooted:
        raise NotRealRooted(
            f"residual {report.max_imag_residual:.3e} exceeds tolerance"
        )
    if p.leading() < 0:
        p = p.scale(-1.0)  # same roots, positive tail for the sign predicate
    chain = _derivative_chain(p)
    hi = cauchy_bound(p) + 1.0
    lo = report.maxroot - 1.0
    floor = -cauchy_bound(p) - 1.0
    while lo > floor and _above_all_roots(chain, lo):
        lo = max(floor, lo - 2.0 * (hi - lo))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _above_all_roots(chain, mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
