"""Scalar backends and dense-matrix primitives.

Two scalar backends are supported throughout the package:

* exact rationals: numpy object arrays holding ``fractions.Fraction``
  entries.  All algebraic decisions (rank, equivalence, realization
  checks) default to this backend.
* float64: plain numpy float arrays with a tolerance policy, used for
  integration and Gramians.

An array's backend is recognised from its dtype (``object`` = exact).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.linalg


@dataclass(frozen=True)
class Tolerance:
    """Comparison policy for the float64 backend.

    Equality is |a - b| <= max(abs_tol, rel_tol * max(|a|, |b|)).
    """

    rel: float = 1e-9
    abs: float = 1e-12

    def close(self, a: float, b: float) -> bool:
        return abs(a - b) <= max(self.abs, self.rel * max(abs(a), abs(b)))

    def rank_threshold(self, rows: int, cols: int, max_entry: float) -> float:
        # standard rank-revealing threshold for pivot acceptance
        return max(self.abs, max(rows, cols) * self.rel * max_entry)


DEFAULT_TOL = Tolerance()


def is_exact(M: np.ndarray) -> bool:
    """True when the array uses the exact rational backend."""
    return M.dtype == object


def parse_scalar(text: str) -> Fraction:
    """Parse "3", "3/2" or "0.75" into an exact Fraction.

    Decimal strings are converted exactly (finite decimal expansion).
    """
    return Fraction(text.strip())


def mat(rows, exact: bool = True) -> np.ndarray:
    """Build a 2-D matrix from nested scalars or strings."""
    if exact:
        data = [[Fraction(str(e)) if isinstance(e, (str, float)) else Fraction(e)
                 for e in row] for row in rows]
        return np.array(data, dtype=object)
    return np.array(rows, dtype=float)


def vec(entries, exact: bool = True) -> np.ndarray:
    """Build a 1-D column vector from scalars or strings."""
    if exact:
        return np.array([Fraction(str(e)) if isinstance(e, (str, float))
                         else Fraction(e) for e in entries], dtype=object)
    return np.array(entries, dtype=float)


def to_float(M: np.ndarray) -> np.ndarray:
    return M.astype(float)


def zeros(shape, exact: bool = True) -> np.ndarray:
    if exact:
        return np.full(shape, Fraction(0), dtype=object)
    return np.zeros(shape)


def eye(n: int, exact: bool = True) -> np.ndarray:
    if exact:
        M = zeros((n, n))
        for i in range(n):
            M[i, i] = Fraction(1)
        return M
    return np.eye(n)


def ones_vector(k: int, exact: bool = True) -> np.ndarray:
    """The all-ones replication vector of length k (1-D)."""
    if k < 1:
        raise ValueError("ones_vector requires k >= 1")
    if exact:
        return np.full(k, Fraction(1), dtype=object)
    return np.ones(k)


def j_matrix(k: int, exact: bool = True) -> np.ndarray:
    """k x k averaging matrix with every entry 1/k (idempotent)."""
    if k < 1:
        raise ValueError("j_matrix requires k >= 1")
    if exact:
        return np.full((k, k), Fraction(1, k), dtype=object)
    return np.full((k, k), 1.0 / k)


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product (thin wrapper, works for both backends)."""
    return np.kron(A, B)


def _echelon(M: np.ndarray, tol: Tolerance):
    """Row-reduce a copy of M; return (rank, pivot column indices).

    Exact arrays eliminate with exact zero tests; float arrays use the
    rank threshold of `tol` with partial (max-abs) row pivoting.
    """
    A = M.copy()
    m, n = A.shape
    exact = is_exact(A)
    if not exact:
        max_entry = float(np.max(np.abs(A))) if A.size else 0.0
        thresh = tol.rank_threshold(m, n, max_entry)
    piv_row = 0
    pivots = []
    for c in range(n):
        if piv_row >= m:
            break
        col = A[piv_row:, c]
        if exact:
            sel = None
            for i, a in enumerate(col):
                if a != 0:
                    sel = piv_row + i
                    break
            if sel is None:
                continue
        else:
            sel = piv_row + int(np.argmax(np.abs(col.astype(float))))
            if abs(float(A[sel, c])) <= thresh:
                continue
        if sel != piv_row:
            A[[piv_row, sel]] = A[[sel, piv_row]]
        p = A[piv_row, c]
        for r in range(piv_row + 1, m):
            if A[r, c] != 0:
                A[r, c:] = A[r, c:] - (A[r, c] / p) * A[piv_row, c:]
        pivots.append(c)
        piv_row += 1
    return piv_row, pivots


def rank(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> int:
    """Rank by Gaussian elimination; exact under the rational backend."""
    if M.size == 0:
        return 0
    r, _ = _echelon(M, tol)
    return r


def pivot_columns(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    if M.size == 0:
        return []
    _, piv = _echelon(M, tol)
    return piv


@dataclass(frozen=True)
class SubspaceBasis:
    """A subspace of R^n represented by independent basis columns.

    ``basis`` has shape (ambient_dim, k); k = 0 encodes the zero
    subspace.
    """

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise ValueError("basis must be ambient_dim x k")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @staticmethod
    def zero(ambient_dim: int, exact: bool = True) -> "SubspaceBasis":
        return SubspaceBasis(ambient_dim, zeros((ambient_dim, 0), exact))


def column_space_basis(M: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> SubspaceBasis:
    """Pivot-column basis of the column space (columns of M retained)."""
    piv = pivot_columns(M, tol)
    return SubspaceBasis(M.shape[0], M[:, piv])


def in_span(S: SubspaceBasis, v: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Membership test: v in span(S) iff appending v keeps the rank."""
    v = np.asarray(v)
    if v.ndim == 2:
        v = v[:, 0]
    if v.shape[0] != S.ambient_dim:
        raise ValueError(
            f"vector of dim {v.shape[0]} against ambient dim {S.ambient_dim}")
    if S.dim == 0:
        if is_exact(v):
            return bool(all(x == 0 for x in v))
        m = float(np.max(np.abs(v))) if v.size else 0.0
        return m <= tol.rank_threshold(v.shape[0], 1, max(m, 1.0)) or \
            all(tol.close(float(x), 0.0) for x in v)
    aug = np.hstack([S.basis, v.reshape(-1, 1)])
    return rank(aug, tol) == S.dim


def spans_equal(S: SubspaceBasis, T: SubspaceBasis,
                tol: Tolerance = DEFAULT_TOL) -> bool:
    """Mutual inclusion of two subspaces of the same ambient space."""
    if S.ambient_dim != T.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return (all(in_span(S, T.basis[:, j], tol) for j in range(T.dim)) and
            all(in_span(T, S.basis[:, j], tol) for j in range(S.dim)))


def solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b for square nonsingular A on either backend."""
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("A must be square")
    if not is_exact(A):
        return np.linalg.solve(A, b)
    M = A.copy()
    rhs = b.copy().astype(object)
    one_d = rhs.ndim == 1
    if one_d:
        rhs = rhs.reshape(-1, 1)
    for c in range(n):
        sel = None
        for r in range(c, n):
            if M[r, c] != 0:
                sel = r
                break
        if sel is None:
            raise ValueError("matrix is singular")
        if sel != c:
            M[[c, sel]] = M[[sel, c]]
            rhs[[c, sel]] = rhs[[sel, c]]
        p = M[c, c]
        for r in range(n):
            if r != c and M[r, c] != 0:
                f = M[r, c] / p
                M[r] = M[r] - f * M[c]
                rhs[r] = rhs[r] - f * rhs[c]
    for c in range(n):
        rhs[c] = rhs[c] / M[c, c]
    return rhs[:, 0] if one_d else rhs


def inverse(A: np.ndarray) -> np.ndarray:
    if not is_exact(A):
        return np.linalg.inv(A)
    return solve(A, eye(A.shape[0]))


def matrix_exponential_apply(A: np.ndarray, t: float, v: np.ndarray) -> np.ndarray:
    """Compute e^{A t} v (float64 backend only)."""
    if is_exact(A) or is_exact(np.asarray(v)):
        raise TypeError("matrix exponential requires the float64 backend")
    return scipy.linalg.expm(np.asarray(A, dtype=float) * t) @ np.asarray(v, dtype=float)
