"""State-space models and their movement between dimensions.

A system (A, B) of dimension p lifts to dimension n = k*p as
(A (x) J_k, B (x) 1_k); conversely the projecting representative strips
the largest common factor from A and B jointly.  Systems are equivalent
when they share the same irreducible representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import mixdim
from .numerics import (DEFAULT_TOL, Tolerance, eye, inverse, is_exact,
                       j_matrix, kron, ones_vector, rank)


@dataclass(frozen=True)
class LinSys:
    """A linear control system dx/dt = A x + B u.

    B may have zero columns for input-free augmentation blocks.
    """

    name: str
    A: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        n = self.A.shape[0]
        if self.A.shape != (n, n):
            raise ValueError(f"{self.name}: A must be square")
        B = self.B
        if B.ndim == 1:
            object.__setattr__(self, "B", B.reshape(-1, 1))
            B = self.B
        if B.shape[0] != n:
            raise ValueError(f"{self.name}: B has {B.shape[0]} rows, A has {n}")

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @property
    def n_inputs(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True)
class QuotientSysRep:
    """Irreducible representative of a system class."""

    sys: LinSys
    multiplier_stripped: int


def lift_system(s: LinSys, n: int) -> LinSys:
    """Lift (A, B) from dimension p to dimension n = k*p."""
    p = s.dim
    if n % p != 0:
        raise ValueError(f"cannot lift dimension {p} to {n}: {p} does not divide {n}")
    k = n // p
    if k == 1:
        return s
    exact = is_exact(s.A)
    A = kron(s.A, j_matrix(k, exact))
    B = kron(s.B, ones_vector(k, exact).reshape(-1, 1))
    return LinSys(name=s.name, A=A, B=B)


def project_system(s: LinSys, tol: Tolerance = DEFAULT_TOL) -> QuotientSysRep:
    """Strip the largest common factor k with A = A0 (x) J_k and
    B = B0 (x) 1_k.

    A and B reduce jointly so the representative is a well-formed
    system (independent reduction could produce mismatched dimensions).
    """
    A, B = s.A, s.B
    mult = 1
    while True:
        n = A.shape[0]
        stripped = False
        for k in mixdim._divisors_desc(n):
            if k == 1:
                break
            if (mixdim._j_blocks_constant(A, k, tol) and
                    mixdim._row_blocks_constant(B, k, tol)):
                A = mixdim._j_block_representative(A, k)
                view = B.reshape(n // k, k, B.shape[1])
                B = view[:, 0, :].copy() if is_exact(B) else view.mean(axis=1)
                mult *= k
                stripped = True
                break
        if not stripped:
            return QuotientSysRep(sys=LinSys(s.name, A, B),
                                  multiplier_stripped=mult)


def systems_equivalent(s1: LinSys, s2: LinSys,
                       tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff both systems project to the same irreducible (A, B)."""
    if s1.n_inputs != s2.n_inputs:
        raise ValueError("input counts differ")
    r1 = project_system(s1, tol).sys
    r2 = project_system(s2, tol).sys
    if r1.dim != r2.dim:
        return False
    if is_exact(r1.A) and is_exact(r2.A):
        return (bool(all(a == b for a, b in zip(r1.A.flat, r2.A.flat))) and
                bool(all(a == b for a, b in zip(r1.B.flat, r2.B.flat))))
    return (all(tol.close(float(a), float(b)) for a, b in zip(r1.A.flat, r2.A.flat)) and
            all(tol.close(float(a), float(b)) for a, b in zip(r1.B.flat, r2.B.flat)))


def apply_pseudo_transform(s: LinSys, T: np.ndarray) -> LinSys:
    """Transform the system by the dimension-matched member of <T>.

    With m = dim(T) dividing n = dim(s), the member T~ = T (x) I_{n/m}
    acts as a genuine coordinate change: returns (T~ A T~^-1, T~ B).
    """
    n = s.dim
    m = T.shape[0]
    if T.shape != (m, m):
        raise ValueError("T must be square")
    if n % m != 0:
        raise ValueError(f"transform dimension {m} does not divide system dimension {n}")
    if rank(T) < m:
        raise ValueError("T is singular")
    exact = is_exact(s.A) and is_exact(T)
    if not exact:
        T = T.astype(float)
    Tt = kron(T, eye(n // m, exact)) if n // m > 1 else T
    A = Tt @ s.A @ inverse(Tt)
    B = Tt @ s.B
    return LinSys(name=s.name, A=A, B=B)
