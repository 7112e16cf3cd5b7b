"""Mixed characteristic polynomials and expected product polynomials.

The mixed characteristic polynomial of matrices A_1..A_m applies the
operator prod_i (1 - d/dz_i) to det(xI + sum_i z_i A_i) and sets z = 0.
Because each variable is differentiated at most once, only the multilinear
part of the determinant matters.  Writing

    D_S(x) = (prod_{i in S} d/dz_i) det(xI + sum z_i A_i) |_{z=0}
           = c_S * x^(d - |S|),

every evaluation in this module is a weighted sum over the scalar table
{c_S}.  The quadratic variant applies prod_i (1 - d/dz_i d/dw_i) to a
product of two such determinants and expands over pairs of subsets.

The table is the dominant cost and is computed once per ensemble; signs,
scalar multiples and operator coefficients enter only through per-subset
weights, since c_S is multilinear in the matrix arguments.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeGuard
from .linalg import MatrixEnsemble, as_hermitian
from .polynomials import RealPolynomial

MAX_INDICES = 14
MAX_DIM = 10

# Batched determinant chunk size (number of k x k matrices per np call).
_DET_CHUNK = 200_000


def popcounts(n: int) -> np.ndarray:
    """Bit-count table for all masks below 2^n."""
    pc = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        pc[1 << i : 1 << (i + 1)] = pc[: 1 << i] + 1
    return pc


def subset_products(weights) -> np.ndarray:
    """w[mask] = prod_{i in mask} weights[i], for all masks."""
    weights = np.asarray(weights, dtype=np.float64)
    n = len(weights)
    out = np.ones(1 << n)
    for i in range(n):
        step = 1 << i
        out[step : 2 * step] = out[:step] * weights[i]
    return out


def _mixed_coefficient(stack: np.ndarray, d: int, k: int) -> float:
    """Sum over column subsets T (|T| = k) and bijections of det minors.

    ``stack`` holds the k matrices A_i, i in S, in index order.  The value is
    the coefficient of prod_{i in S} z_i in det(sum z_i A_i restricted to T)
    summed over T, i.e. c_S without the x power.
    """
    combos = np.array(list(itertools.combinations(range(d), k)), dtype=np.intp)
    perms = np.array(list(itertools.permutations(range(k))), dtype=np.intp)
    rows = combos[:, None, :, None]
    cols = combos[:, None, None, :]
    total = 0.0
    chunk = max(1, _DET_CHUNK // (len(combos) * k * k))
    for start in range(0, len(perms), chunk):
        P = perms[start : start + chunk]
        mats = stack[P[None, :, None, :], rows, cols]
        dets = np.linalg.det(mats)
        total += math.fsum(dets.real.ravel().tolist())
    return total


@dataclass(frozen=True)
class SubsetTable:
    """Scalar coefficients c_S indexed by subset bitmask (bit i <-> index i)."""

    dim: int
    n: int
    coeffs: np.ndarray
    sizes: np.ndarray

    @classmethod
    def build(cls, matrices, dim: int | None = None, guard: bool = True) -> "SubsetTable":
        if isinstance(matrices, MatrixEnsemble):
            mats = [H.entries for H in matrices]
            dim = matrices.dim
        else:
            mats = [as_hermitian(M).entries for M in matrices]
            dim = mats[0].shape[0] if dim is None else dim
        n = len(mats)
        if guard and (n > MAX_INDICES or dim > MAX_DIM):
            raise SizeGuard(
                f"fast path limited to {MAX_INDICES} indices and dim {MAX_DIM}; "
                f"got n={n}, d={dim}"
            )
        A = np.stack(mats)
        sizes = popcounts(n)
        coeffs = np.zeros(1 << n)
        coeffs[0] = 1.0
        for k in range(1, min(n, dim) + 1):
            for S in itertools.combinations(range(n), k):
                mask = 0
                for i in S:
                    mask |= 1 << i
                coeffs[mask] = _mixed_coefficient(A[list(S)], dim, k)
        return cls(dim=dim, n=n, coeffs=coeffs, sizes=sizes)


@dataclass(frozen=True)
class DerivativeSpec:
    """Coefficients of prod_i (1 + a_i d/dz_i + b_i d/dw_i + c_i d/dz_i d/dw_i).

    A fixed value s corresponds to (-s, s, -s^2); an undecided variable with
    mean mu and second moment m2 to (-mu, mu, -m2).
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    c: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.a) == len(self.b) == len(self.c)):
            raise ValueError("spec coefficient lists must have equal length")

    def __len__(self) -> int:
        return len(self.a)

    @classmethod
    def from_triples(cls, triples) -> "DerivativeSpec":
        a, b, c = zip(*triples) if triples else ((), (), ())
        return cls(tuple(map(float, a)), tuple(map(float, b)), tuple(map(float, c)))

    @property
    def stability_safe(self) -> tuple[bool, ...]:
        """Per index: the factor matches (1 + t dz - t dw - s^2 dz dw), t^2 <= s^2."""
        out = []
        for ai, bi, ci in zip(self.a, self.b, self.c):
            out.append(ai == -bi and ci <= 0.0 and ai * ai <= -ci + 1e-15)
        return tuple(out)


def _require_table(E: MatrixEnsemble, table: SubsetTable | None) -> SubsetTable:
    if table is None:
        return SubsetTable.build(E)
    if table.n != len(E) or table.dim != E.dim:
        raise ValueError("table does not match ensemble")
    return table


def subset_derivative(
    E: MatrixEnsemble, S, table: SubsetTable | None = None
) -> RealPolynomial:
    """D_S(x) = c_S x^(d-|S|); identically zero when |S| > d."""
    table = _require_table(E, table)
    S = sorted(set(S))
    if S and (S[0] < 0 or S[-1] >= len(E)):
        raise ValueError("subset indices out of range")
    if len(S) > E.dim:
        return RealPolynomial(())
    mask = 0
    for i in S:
        mask |= 1 << i
    return RealPolynomial.monomial(E.dim - len(S), float(table.coeffs[mask]))


def mixed_char_poly(
    E: MatrixEnsemble, scalars, table: SubsetTable | None = None
) -> RealPolynomial:
    """Mixed characteristic polynomial of (eps_1 A_1, ..., eps_m A_m).

    Equals sum_S prod_{i in S}(-eps_i) D_S(x); monic of degree d.
    """
    table = _require_table(E, table)
    scalars = np.asarray(scalars, dtype=np.float64)
    if scalars.shape != (len(E),):
        raise ValueError(f"expected {len(E)} scalars")
    w = subset_products(-scalars)
    vals = w * table.coeffs
    d = E.dim
    sums = np.bincount(table.sizes, weights=vals, minlength=table.n + 1)
    coeffs = np.zeros(d + 1)
    for k in range(min(table.n, d) + 1):
        coeffs[d - k] = sums[k]
    return RealPolynomial.from_coeffs(coeffs)


def expected_product_poly(
    E: MatrixEnsemble, spec: DerivativeSpec, table: SubsetTable | None = None
) -> RealPolynomial:
    """Apply a product differential operator to det(xI+sum z A) det(xI+sum w A).

    Expands over ordered subset pairs (S, T):

        sum_{S,T} (prod_{S&T} c_i)(prod_{S\\T} a_i)(prod_{T\\S} b_i) D_S D_T,

    monic of degree 2d.  Subsets are enumerated in sorted mask order so the
    accumulation is reproducible.
    """
    table = _require_table(E, table)
    if len(spec) != len(E):
        raise ValueError(f"spec length {len(spec)} != ensemble size {len(E)}")
    n, d = table.n, table.dim
    full = (1 << n) - 1
    wa = subset_products(spec.a)
    wb = subset_products(spec.b)
    wc = subset_products(spec.c)
    c = table.coeffs
    sizes = table.sizes
    T = np.arange(1 << n)
    out = np.zeros(2 * d + 1)
    for S in np.nonzero(c)[0]:
        kS = int(sizes[S])
        if kS > d:
            continue
        notS = full ^ int(S)
        vals = wc[T & S] * wa[np.bitwise_and(S, np.bitwise_xor(T, full))]
        vals *= wb[T & notS] * c
        by_size = np.bincount(sizes, weights=vals * c[S], minlength=n + 1)
        for kT in range(min(n, d) + 1):
            if by_size[kT] != 0.0:
                out[2 * d - kS - kT] += by_size[kT]
    return RealPolynomial.from_coeffs(out)


def quadratic_mixed_char_poly(
    E: MatrixEnsemble, table: SubsetTable | None = None
) -> RealPolynomial:
    """Quadratic mixed characteristic polynomial: spec (0, 0, -1) everywhere.

    Collapses to sum_S (-1)^|S| c_S^2 x^(2(d-|S|)).
    """
    m = len(E)
    spec = DerivativeSpec((0.0,) * m, (0.0,) * m, (-1.0,) * m)
    return expected_product_poly(E, spec, table)


# ---------------------------------------------------------------------------
# Truncated-ring oracle: independent symbolic evaluation for small instances.
# ---------------------------------------------------------------------------

ORACLE_MAX_DIM = 4
ORACLE_MAX_INDICES = 4


class _Multilinear:
    """Element of R[x][z_1..z_n] / (z_i^2), terms keyed by variable bitmask."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, np.ndarray] | None = None):
        self.terms = terms if terms is not None else {}

    def add(self, other: "_Multilinear") -> "_Multilinear":
        out = dict(self.terms)
        for mask, poly in other.terms.items():
            if mask in out:
                a, b = out[mask], poly
                if len(a) < len(b):
                    a, b = b, a
                s = a.copy()
                s[: len(b)] += b
                out[mask] = s
            else:
                out[mask] = poly
        return _Multilinear(out)

    def neg(self) -> "_Multilinear":
        return _Multilinear({m: -p for m, p in self.terms.items()})

    def mul(self, other: "_Multilinear") -> "_Multilinear":
        out: dict[int, np.ndarray] = {}
        for m1, p1 in self.terms.items():
            for m2, p2 in other.terms.items():
                if m1 & m2:
                    continue  # z_i^2 truncates to zero
                prod = np.convolve(p1, p2)
                mask = m1 | m2
                if mask in out:
                    cur = out[mask]
                    if len(cur) < len(prod):
                        cur, prod = prod, cur
                    s = cur.copy()
                    s[: len(prod)] += prod
                    out[mask] = s
                else:
                    out[mask] = prod
        return _Multilinear(out)


def _ring_det(M: list[list[_Multilinear]]) -> _Multilinear:
    """Division-free determinant by Laplace expansion along the first row."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = _Multilinear({})
    for j in range(n):
        minor = [[M[r][c] for c in range(n) if c != j] for r in range(1, n)]
        term = M[0][j].mul(_ring_det(minor))
        total = total.add(term if j % 2 == 0 else term.neg())
    return total


def _ring_determinant(matrices: list[np.ndarray], d: int, bit_offset: int) -> _Multilinear:
    """det(xI + sum_i z_{i+offset} A_i) over the truncated ring."""
    n = len(matrices)
    M: list[list[_Multilinear]] = []
    for r in range(d):
        row = []
        for c in range(d):
            terms: dict[int, np.ndarray] = {}
            if r == c:
                terms[0] = np.array([0.0 + 0.0j, 1.0 + 0.0j])
            for i in range(n):
                v = matrices[i][r, c]
                if v != 0:
                    terms[1 << (i + bit_offset)] = np.array([v], dtype=np.complex128)
            row.append(_Multilinear(terms))
        M.append(row)
    return _ring_det(M)


def _real_poly_from_ring(poly: np.ndarray) -> RealPolynomial:
    if float(np.max(np.abs(poly.imag), initial=0.0)) > 1e-8 * (
        1.0 + float(np.max(np.abs(poly.real), initial=0.0))
    ):
        raise ValueError("oracle produced a non-real polynomial")
    return RealPolynomial.from_coeffs(poly.real)


def truncated_ring_oracle(
    E: MatrixEnsemble,
    scalars=None,
    spec: DerivativeSpec | None = None,
) -> RealPolynomial:
    """Symbolic evaluation of the linear or product operator (d, m <= 4).

    Exactly one of ``scalars`` (linear mode, scalars folded into the
    matrices) or ``spec`` (product mode) must be given.  Serves as an
    independent check of the fast subset-table path.
    """
    if (scalars is None) == (spec is None):
        raise ValueError("give exactly one of scalars= or spec=")
    d, m = E.dim, len(E)
    if d > ORACLE_MAX_DIM or m > ORACLE_MAX_INDICES:
        raise SizeGuard(f"oracle limited to d <= {ORACLE_MAX_DIM}, m <= {ORACLE_MAX_INDICES}")
    deg = d if spec is None else 2 * d
    if scalars is not None:
        scalars = np.asarray(scalars, dtype=np.float64)
        mats = [float(scalars[i]) * E[i].entries for i in range(m)]
        det = _ring_determinant(mats, d, 0)
        out = np.zeros(deg + 1, dtype=np.complex128)
        for mask, poly in det.terms.items():
            sign = -1.0 if bin(mask).count("1") % 2 else 1.0
            out[: len(poly)] += sign * poly
        return _real_poly_from_ring(out)
    mats = [E[i].entries for i in range(m)]
    dz = _ring_determinant(mats, d, 0)
    dw = _ring_determinant(mats, d, m)
    F = dz.mul(dw)
    zfull = (1 << m) - 1
    out = np.zeros(deg + 1, dtype=np.complex128)
    for mask, poly in F.terms.items():
        S = mask & zfull
        T = mask >> m
        w = 1.0
        for i in range(m):
            bit = 1 << i
            in_s, in_t = bool(S & bit), bool(T & bit)
            if in_s and in_t:
                w *= spec.c[i]
            elif in_s:
                w *= spec.a[i]
            elif in_t:
                w *= spec.b[i]
        if w != 0.0:
            out[: len(poly)] += w * poly
    return _real_poly_from_ring(out)
