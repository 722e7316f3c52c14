"""Mixed-dimension vector/matrix algebra.

Vectors of different lengths are compared through replication: x and y
are equivalent when x (x) 1_a = y (x) 1_b for some replication factors.
Each equivalence class has a unique irreducible (minimal-dimension)
member; all class arithmetic is carried out on representatives.

Three cross-dimensional products are provided:

* ``second_stp``    -- (A (x) J)(B (x) J), matrix-matrix
* ``stp_action``    -- (A (x) J)(x (x) 1), matrix-vector, class action
* ``stp_identity_action`` -- (A (x) I)(x (x) 1), used for
  pseudo-coordinate transformations
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (DEFAULT_TOL, Tolerance, is_exact, j_matrix, kron,
                       ones_vector, to_float)


def _divisors_desc(n: int) -> list[int]:
    return sorted((d for d in range(1, n + 1) if n % d == 0), reverse=True)


def _common_backend(*arrays):
    """Promote to float unless every argument is exact."""
    exact = all(is_exact(np.asarray(a)) for a in arrays)
    if exact:
        return [np.asarray(a) for a in arrays], True
    return [to_float(np.asarray(a)) for a in arrays], False


def _blocks_constant(x: np.ndarray, s: int, tol: Tolerance) -> bool:
    """True when every consecutive length-s block of x is constant."""
    blocks = x.reshape(-1, s)
    if is_exact(x):
        return all(all(b == row[0] for b in row) for row in blocks)
    return all(tol.close(float(b), float(row[0])) for row in blocks for b in row)


def _block_representative(x: np.ndarray, s: int) -> np.ndarray:
    blocks = x.reshape(-1, s)
    if is_exact(x):
        return blocks[:, 0].copy()
    return blocks.mean(axis=1)  # averaging is robust for tolerant floats


@dataclass(frozen=True)
class MixVector:
    """A vector together with the irreducible member of its class."""

    value: np.ndarray
    irreducible: np.ndarray

    @property
    def multiplicity(self) -> int:
        return self.value.shape[0] // self.irreducible.shape[0]


def reduce_vector(x: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> MixVector:
    """Strip replication factors until the vector is irreducible.

    Factors are searched largest-first and stripping recurses, so the
    result does not depend on the factorization order.
    """
    x = np.asarray(x)
    if x.ndim == 2:
        x = x[:, 0]
    if x.shape[0] < 1:
        raise ValueError("empty vector")
    y = x
    while True:
        n = y.shape[0]
        stripped = False
        for s in _divisors_desc(n):
            if s == 1:
                break
            if _blocks_constant(y, s, tol):
                y = _block_representative(y, s)
                stripped = True
                break
        if not stripped:
            return MixVector(value=x, irreducible=y)


def vec_equivalent(x: np.ndarray, y: np.ndarray,
                   tol: Tolerance = DEFAULT_TOL) -> bool:
    """Class equality: identical irreducible representatives."""
    (x, y), exact = _common_backend(x, y)
    rx = reduce_vector(x, tol).irreducible
    ry = reduce_vector(y, tol).irreducible
    if rx.shape != ry.shape:
        return False
    if exact:
        return bool(all(a == b for a, b in zip(rx, ry)))
    return all(tol.close(float(a), float(b)) for a, b in zip(rx, ry))


def vec_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cross-dimensional addition on the lcm dimension."""
    (x, y), exact = _common_backend(x, y)
    if x.ndim != 1 or y.ndim != 1:
        raise ValueError("vec_add expects 1-D vectors")
    t = math.lcm(x.shape[0], y.shape[0])
    return (kron(x, ones_vector(t // x.shape[0], exact)) +
            kron(y, ones_vector(t // y.shape[0], exact)))


def vec_sub(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return vec_add(x, -np.asarray(y))


def _j_blocks_constant(A: np.ndarray, s: int, tol: Tolerance) -> bool:
    """Check A = A0 (x) J_s: every s x s block constant."""
    m, n = A.shape
    view = A.reshape(m // s, s, n // s, s)
    if is_exact(A):
        return all(
            all(view[i, a, j, b] == view[i, 0, j, 0]
                for a in range(s) for b in range(s))
            for i in range(m // s) for j in range(n // s))
    return all(
        tol.close(float(view[i, a, j, b]), float(view[i, 0, j, 0]))
        for i in range(m // s) for j in range(n // s)
        for a in range(s) for b in range(s))


def _j_block_representative(A: np.ndarray, s: int) -> np.ndarray:
    m, n = A.shape
    view = A.reshape(m // s, s, n // s, s)
    if is_exact(A):
        return view[:, 0, :, 0] * s
    return view.mean(axis=(1, 3)) * s


@dataclass(frozen=True)
class MatrixClassRep:
    """A matrix with its J-irreducible representative.

    value = irreducible (x) J_multiplier.
    """

    value: np.ndarray
    irreducible: np.ndarray
    multiplier: int


def reduce_matrix(A: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> MatrixClassRep:
    """Strip the largest factor s with A = A0 (x) J_s, recursively."""
    A = np.asarray(A)
    B = A
    mult = 1
    while True:
        m, n = B.shape
        stripped = False
        for s in _divisors_desc(math.gcd(m, n)):
            if s == 1:
                break
            if _j_blocks_constant(B, s, tol):
                B = _j_block_representative(B, s)
                mult *= s
                stripped = True
                break
        if not stripped:
            return MatrixClassRep(value=A, irreducible=B, multiplier=mult)


def mat_equivalent(A: np.ndarray, B: np.ndarray,
                   tol: Tolerance = DEFAULT_TOL) -> bool:
    """Matrix class equality: A (x) J_a = B (x) J_b for some a, b."""
    (A, B), exact = _common_backend(A, B)
    ra = reduce_matrix(A, tol).irreducible
    rb = reduce_matrix(B, tol).irreducible
    if ra.shape != rb.shape:
        return False
    if exact:
        return bool(all(a == b for a, b in zip(ra.flat, rb.flat)))
    return all(tol.close(float(a), float(b)) for a, b in zip(ra.flat, rb.flat))


def _row_blocks_constant(B: np.ndarray, s: int, tol: Tolerance) -> bool:
    """Check B = B0 (x) 1_s: rows replicated in blocks of s."""
    m, c = B.shape
    view = B.reshape(m // s, s, c)
    if is_exact(B):
        return all(
            all(view[i, a, j] == view[i, 0, j] for a in range(s) for j in range(c))
            for i in range(m // s))
    return all(
        tol.close(float(view[i, a, j]), float(view[i, 0, j]))
        for i in range(m // s) for a in range(s) for j in range(c))


def reduce_matrix_vec(B: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Strip the largest row-replication factor: B = B0 (x) 1_s.

    All columns reduce jointly with the same factor.
    """
    B = np.asarray(B)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    out = B
    while True:
        m = out.shape[0]
        stripped = False
        for s in _divisors_desc(m):
            if s == 1:
                break
            if _row_blocks_constant(out, s, tol):
                view = out.reshape(m // s, s, out.shape[1])
                out = (view[:, 0, :].copy() if is_exact(out)
                       else view.mean(axis=1))
                stripped = True
                break
        if not stripped:
            return out


def mat_vec_equivalent(B: np.ndarray, D: np.ndarray,
                       tol: Tolerance = DEFAULT_TOL) -> bool:
    """Vector equivalence of matrices: B (x) 1_a = D (x) 1_b."""
    (B, D), exact = _common_backend(B, D)
    rb = reduce_matrix_vec(B, tol)
    rd = reduce_matrix_vec(D, tol)
    if rb.shape != rd.shape:
        return False
    if exact:
        return bool(all(a == b for a, b in zip(rb.flat, rd.flat)))
    return all(tol.close(float(a), float(b)) for a, b in zip(rb.flat, rd.flat))


def second_stp(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """(A (x) J_{t/n}) (B (x) J_{t/p}) with t = lcm(cols A, rows B)."""
    (A, B), exact = _common_backend(A, B)
    n = A.shape[1]
    p = B.shape[0]
    t = math.lcm(n, p)
    return kron(A, j_matrix(t // n, exact)) @ kron(B, j_matrix(t // p, exact))


def stp_action(A: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(A (x) J_{t/n}) (x (x) 1_{t/r}): the class action on vectors."""
    (A, x), exact = _common_backend(A, x)
    if x.ndim == 2:
        x = x[:, 0]
    n = A.shape[1]
    r = x.shape[0]
    t = math.lcm(n, r)
    return kron(A, j_matrix(t // n, exact)) @ kron(x, ones_vector(t // r, exact))


def stp_action_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Column-wise class action: (A (x) J_{t/n}) (B (x) 1_{t/r})."""
    (A, B), exact = _common_backend(A, B)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    n = A.shape[1]
    r = B.shape[0]
    t = math.lcm(n, r)
    return kron(A, j_matrix(t // n, exact)) @ kron(B, ones_vector(t // r, exact).reshape(-1, 1))


def stp_identity_action(A: np.ndarray, x: np.ndarray) -> np.ndarray:
    """(A (x) I_{t/n}) (x (x) 1_{t/r}): identity-based action.

    For square nonsingular A this acts as a pseudo-coordinate
    transformation on classes.
    """
    (A, x), exact = _common_backend(A, x)
    if x.ndim == 2:
        x = x[:, 0]
    n = A.shape[1]
    r = x.shape[0]
    t = math.lcm(n, r)
    from .numerics import eye
    return kron(A, eye(t // n, exact)) @ kron(x, ones_vector(t // r, exact))
