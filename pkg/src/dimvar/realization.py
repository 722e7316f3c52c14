"""Transient-realization decision procedures.

Given two systems of different dimensions, decide whether a transient
between them is realizable (the smaller system's controllable subspace,
zero-embedded into the larger space, can be completed to the whole
space by part of the larger system's controllable subspace), build the
blended transient model on the lcm dimension, and check the necessary
modeling condition (the blend's controllable subspace must contain both
lifted subsystem subspaces).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .controllability import ctrb_subspace
from .numerics import (DEFAULT_TOL, SubspaceBasis, Tolerance, in_span,
                       is_exact, kron, ones_vector, rank, zeros)
from .systems import LinSys, lift_system


def augment_with_zero_dynamics(s: LinSys, q: int) -> LinSys:
    """Pad a p-dimensional system to dimension q with zero dynamics.

    The added coordinates satisfy dx/dt = 0 and receive no input, so
    the controllable subspace is unchanged.
    """
    p = s.dim
    if q < p:
        raise ValueError(f"cannot augment dimension {p} down to {q}")
    if q == p:
        return s
    exact = is_exact(s.A)
    A = zeros((q, q), exact)
    A[:p, :p] = s.A
    B = zeros((q, s.n_inputs), exact)
    B[:p, :] = s.B
    return LinSys(name=s.name, A=A, B=B)


def embed(v: np.ndarray, n: int) -> np.ndarray:
    """Zero-pad a vector into R^n."""
    v = np.asarray(v)
    if v.ndim == 2:
        v = v[:, 0]
    m = v.shape[0]
    if n < m:
        raise ValueError(f"cannot embed dimension {m} into {n}")
    out = zeros(n, is_exact(v))
    out[:m] = v
    return out


def embed_subspace(S: SubspaceBasis, n: int) -> SubspaceBasis:
    """Zero-pad every basis column into R^n."""
    if n < S.ambient_dim:
        raise ValueError(f"cannot embed ambient {S.ambient_dim} into {n}")
    out = zeros((n, S.dim), is_exact(S.basis))
    out[:S.ambient_dim, :] = S.basis
    return SubspaceBasis(n, out)


def direct_sum_check(U: SubspaceBasis, V: SubspaceBasis, q: int,
                     tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff U and V intersect trivially and together fill R^q."""
    if U.ambient_dim != q or V.ambient_dim != q:
        raise ValueError("ambient dimensions must equal q")
    if U.dim + V.dim != q:
        return False
    return rank(np.hstack([U.basis, V.basis]), tol) == q


@dataclass(frozen=True)
class RealizationReport:
    """Outcome of the transient-realization check.

    ``witness`` spans the complement chosen inside the target system's
    controllable subspace; when ``realizable`` is False the sufficient
    condition was not met (the check is not a proof of impossibility).
    """

    realizable: bool
    q: int
    dim_C1: int
    dim_C2: int
    witness: SubspaceBasis
    notes: str = ""


def check_realization(s1: LinSys, s2: LinSys,
                      tol: Tolerance = DEFAULT_TOL) -> RealizationReport:
    """Decide the sufficient realization condition with a witness.

    Realizable iff rank([embed(C1 basis) | C2 basis]) = q, where C1 and
    C2 are the controllable subspaces and q the larger dimension.  The
    witness is built greedily (lowest-index basis column first) from C2
    columns extending the embedded C1, so embed(C1) (+) witness = R^q.
    When dim(s1) > dim(s2) the roles are swapped and noted.
    """
    notes = ("direct sum interpreted as trivial subspace intersection; "
             "condition is sufficient only")
    if s1.dim > s2.dim:
        small, big = s2, s1
        notes = f"roles swapped: {s1.name} has larger dimension; " + notes
    else:
        small, big = s1, s2
    q = big.dim
    C1 = ctrb_subspace(small.A, small.B, tol)
    C2 = ctrb_subspace(big.A, big.B, tol)
    C1e = embed_subspace(C1.basis, q)
    combined = np.hstack([C1e.basis, C2.basis.basis])
    realizable = rank(combined, tol) == q
    exact = is_exact(small.A)
    witness_cols = []
    if realizable:
        current = C1e.basis
        for j in range(C2.basis.dim):
            if current.shape[1] == q:
                break
            cand = np.hstack([current, C2.basis.basis[:, j:j + 1]])
            if rank(cand, tol) == current.shape[1] + 1:
                current = cand
                witness_cols.append(j)
    witness = (SubspaceBasis(q, C2.basis.basis[:, witness_cols])
               if witness_cols else SubspaceBasis.zero(q, exact))
    return RealizationReport(realizable=realizable, q=q, dim_C1=C1.rank,
                             dim_C2=C2.rank, witness=witness, notes=notes)


@dataclass(frozen=True)
class TransientModel:
    """Blended transient dynamics on the lcm dimension.

    base.A = alpha * (A1 (x) J) + beta * (A2 (x) J); base.B stacks the
    two weighted input channels side by side.
    """

    base: LinSys
    weights: tuple
    source_dims: tuple[int, int]
    input_split: tuple[int, int]

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def B1_star(self) -> np.ndarray:
        return self.base.B[:, :self.input_split[0]]

    @property
    def B2_star(self) -> np.ndarray:
        return self.base.B[:, self.input_split[0]:]


def build_transient_model(s1: LinSys, s2: LinSys, alpha=None, beta=None,
                          masses=None) -> TransientModel:
    """Blend two systems on n = lcm(p, q).

    Weights come either from formal masses (m1, m2), giving the convex
    pair alpha = m1/(m1+m2), beta = 1 - alpha, or directly as any
    strictly positive (alpha, beta).
    """
    if masses is not None:
        m1, m2 = (Fraction(str(m)) for m in masses)
        if m1 <= 0 or m2 <= 0:
            raise ValueError("masses must be strictly positive")
        alpha = m1 / (m1 + m2)
        beta = 1 - alpha
    else:
        if alpha is None or beta is None:
            raise ValueError("provide either masses or both alpha and beta")
        alpha = Fraction(str(alpha)) if not isinstance(alpha, Fraction) else alpha
        beta = Fraction(str(beta)) if not isinstance(beta, Fraction) else beta
        if alpha <= 0 or beta <= 0:
            raise ValueError("weights must be strictly positive")
    p, q = s1.dim, s2.dim
    n = math.lcm(p, q)
    exact = is_exact(s1.A) and is_exact(s2.A)
    if not exact:
        alpha, beta = float(alpha), float(beta)
    l1 = lift_system(s1, n)
    l2 = lift_system(s2, n)
    A = alpha * l1.A + beta * l2.A
    B = np.hstack([alpha * l1.B, beta * l2.B])
    base = LinSys(name=f"blend({s1.name},{s2.name})", A=A, B=B)
    return TransientModel(base=base, weights=(alpha, beta),
                          source_dims=(p, q),
                          input_split=(s1.n_inputs, s2.n_inputs))


@dataclass(frozen=True)
class ModelingReport:
    """Outcome of the necessary modeling condition.

    Every lifted basis vector of the two subsystems' controllable
    subspaces must lie in the blend's controllable subspace.
    """

    holds: bool
    n: int
    tested_vectors: list
    dim_Cz: int


def check_modeling_condition(s1: LinSys, s2: LinSys, model: TransientModel,
                             tol: Tolerance = DEFAULT_TOL) -> ModelingReport:
    """Check that the blend's controllable subspace contains both
    subsystems' controllable subspaces after lifting to dimension n."""
    n = model.dim
    if model.source_dims != (s1.dim, s2.dim):
        raise ValueError("model was not built from these systems")
    Cz = ctrb_subspace(model.base.A, model.base.B, tol)
    tested = []
    holds = True
    exact = is_exact(s1.A)
    for s in (s1, s2):
        C = ctrb_subspace(s.A, s.B, tol)
        k = n // s.dim
        for j in range(C.basis.dim):
            v = kron(C.basis.basis[:, j], ones_vector(k, exact))
            ok = in_span(Cz.basis, v, tol)
            tested.append((v, ok))
            holds = holds and ok
    return ModelingReport(holds=holds, n=n, tested_vectors=tested,
                          dim_Cz=Cz.rank)
