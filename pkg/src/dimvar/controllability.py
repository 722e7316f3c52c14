"""Controllability machinery.

Kalman controllability matrix and subspace, the quotient-space version
(class representatives of the basis columns), the controllability
decomposition into controllable/uncontrollable blocks, and finite-
horizon Gramians for minimum-energy steering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .mixdim import MixVector, reduce_vector, vec_equivalent
from .numerics import (DEFAULT_TOL, SubspaceBasis, Tolerance,
                       column_space_basis, eye, inverse, is_exact, rank,
                       zeros)
from .systems import LinSys


def ctrb_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Horizontal concatenation [B, AB, ..., A^{n-1}B]."""
    n = A.shape[0]
    if A.shape != (n, n) or B.shape[0] != n:
        raise ValueError("incompatible dimensions")
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    blocks = [B]
    for _ in range(n - 1):
        blocks.append(A @ blocks[-1])
    return np.hstack(blocks)


@dataclass(frozen=True)
class CtrbResult:
    """Controllability matrix with its rank and pivot-column basis."""

    matrix: np.ndarray
    rank: int
    basis: SubspaceBasis


def ctrb_subspace(A: np.ndarray, B: np.ndarray,
                  tol: Tolerance = DEFAULT_TOL) -> CtrbResult:
    """Controllable subspace span{B, AB, ...} with a pivot-column basis."""
    n = A.shape[0]
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    if B.shape[1] == 0:
        return CtrbResult(matrix=zeros((n, 0), is_exact(A)), rank=0,
                          basis=SubspaceBasis.zero(n, is_exact(A)))
    C = ctrb_matrix(A, B)
    basis = column_space_basis(C, tol)
    return CtrbResult(matrix=C, rank=basis.dim, basis=basis)


@dataclass(frozen=True)
class QuotientCtrb:
    """Controllable subspace on the quotient space.

    ``reps`` are pairwise non-equivalent irreducible representatives of
    a basis of the controllable subspace.
    """

    reps: list[MixVector]
    ambient_class_dim: int


def quotient_ctrb_subspace(s: LinSys, tol: Tolerance = DEFAULT_TOL) -> QuotientCtrb:
    """Class representatives of the controllable-subspace basis.

    Each pivot-basis column is reduced to its irreducible member and
    duplicates (equivalent classes) are dropped.
    """
    res = ctrb_subspace(s.A, s.B, tol)
    reps: list[MixVector] = []
    for j in range(res.basis.dim):
        mv = reduce_vector(res.basis.basis[:, j], tol)
        if not any(vec_equivalent(mv.irreducible, r.irreducible, tol) for r in reps):
            reps.append(mv)
    return QuotientCtrb(reps=reps, ambient_class_dim=s.dim)


@dataclass(frozen=True)
class KalmanDecomp:
    """Controllability decomposition T A T^-1 = [[A11, A12], [0, A22]].

    T B has zero rows below the controllable block; (A11, B_top) is
    controllable by construction.
    """

    T: np.ndarray
    A11: np.ndarray
    A12: np.ndarray
    A22: np.ndarray
    B_top: np.ndarray
    ctrb_dim: int


def kalman_decomposition(A: np.ndarray, B: np.ndarray,
                         tol: Tolerance = DEFAULT_TOL) -> KalmanDecomp:
    """Build the controllability decomposition.

    The transformation assembles the controllability pivot basis,
    completed to a full basis by standard unit vectors chosen greedily
    by lowest index; T is the inverse of that column assembly, so the
    result is deterministic and exact on the rational backend.
    """
    n = A.shape[0]
    exact = is_exact(A)
    res = ctrb_subspace(A, B, tol)
    k = res.rank
    cols = [res.basis.basis[:, j] for j in range(k)]
    for i in range(n):
        if len(cols) == n:
            break
        e = zeros(n, exact)
        e[i] = Fraction(1) if exact else 1.0
        cand = np.column_stack(cols + [e]) if cols else e.reshape(-1, 1)
        if rank(cand, tol) == len(cols) + 1:
            cols.append(e)
    P = np.column_stack(cols) if cols else eye(n, exact)
    T = inverse(P)
    Ab = T @ A @ P
    Bb = T @ (B if B.ndim == 2 else B.reshape(-1, 1))
    return KalmanDecomp(T=T, A11=Ab[:k, :k], A12=Ab[:k, k:], A22=Ab[k:, k:],
                        B_top=Bb[:k, :], ctrb_dim=k)


@dataclass(frozen=True)
class Gramian:
    """Finite-horizon controllability Gramian over [t0, te]."""

    W: np.ndarray
    t0: float
    te: float


def ctrb_gramian(A: np.ndarray, B: np.ndarray, t0: float, te: float,
                 quad_steps: int = 512) -> Gramian:
    """W = int_{t0}^{te} e^{A tau} B B^T e^{A^T tau} dtau.

    Composite Simpson quadrature with ``quad_steps`` panels; the
    integrand is sampled on the half-step grid with an incrementally
    propagated matrix exponential, and panels accumulate in a fixed
    order so results are reproducible bit for bit.
    """
    if te <= t0:
        raise ValueError(f"empty horizon: te={te} <= t0={t0}")
    if is_exact(A) or is_exact(np.asarray(B)):
        raise TypeError("Gramian requires the float64 backend")
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    h = (te - t0) / quad_steps
    E = scipy.linalg.expm(A * (h / 2.0))
    F = scipy.linalg.expm(A * t0) @ B if t0 != 0.0 else B.copy()
    W = np.zeros((A.shape[0], A.shape[0]))
    G_prev = F @ F.T
    for _ in range(quad_steps):
        F = E @ F
        G_mid = F @ F.T
        F = E @ F
        G_next = F @ F.T
        W += (h / 6.0) * (G_prev + 4.0 * G_mid + G_next)
        G_prev = G_next
    W = 0.5 * (W + W.T)  # kill asymmetric round-off
    return Gramian(W=W, t0=t0, te=te)
