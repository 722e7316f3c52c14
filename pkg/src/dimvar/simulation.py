"""End-to-end transient scenarios.

Lifts a start state and target into the blend model's space, designs a
minimum-energy (Gramian) steering input, integrates with fixed-step
RK4, and reports both the Euclidean endpoint error and the class error
after tolerance-based irreducible reduction of the final state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .controllability import ctrb_gramian, kalman_decomposition
from .mixdim import reduce_vector, vec_sub
from .numerics import Tolerance, to_float
from .realization import (RealizationReport, TransientModel,
                          build_transient_model, check_realization)
from .systems import LinSys

# block-constancy tolerance for reducing floating endpoints to a class
CLASS_REDUCTION_TOL = Tolerance(rel=0.0, abs=1e-6)


class UnreachableTargetError(ValueError):
    """Raised when the required displacement leaves the controllable
    subspace; ``residual`` holds the uncontrollable component."""

    def __init__(self, message: str, residual: np.ndarray):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class Scenario:
    """Parameters of one steered transient run."""

    t0: float
    te: float
    x_start: np.ndarray
    y_target: np.ndarray
    step: float = 1e-3
    quad_steps: int = 512

    def __post_init__(self):
        if self.te <= self.t0:
            raise ValueError(f"empty horizon: te={self.te} <= t0={self.t0}")
        if self.step <= 0:
            raise ValueError("step must be positive")
        if self.te - self.t0 < 10 * self.step:
            raise ValueError("horizon shorter than 10 integration steps")


class ControlSignal:
    """Minimum-energy open-loop input u(t) = B^T e^{A^T (te - t)} eta.

    Evaluates to zero outside [t0, te].  ``eta = None`` encodes the
    zero signal.  Matrix exponentials are memoised per time point since
    RK4 revisits the same half-step grid.
    """

    def __init__(self, A: np.ndarray, Bfull: np.ndarray, eta, t0: float,
                 te: float):
        self.A = np.asarray(A, dtype=float)
        self.Bfull = np.asarray(Bfull, dtype=float)
        if self.Bfull.ndim == 1:
            self.Bfull = self.Bfull.reshape(-1, 1)
        self.eta = None if eta is None else np.asarray(eta, dtype=float)
        self.t0 = t0
        self.te = te
        self._cache: dict[float, np.ndarray] = {}

    @property
    def channels(self) -> int:
        return self.Bfull.shape[1]

    @staticmethod
    def zero(A, Bfull, t0: float, te: float) -> "ControlSignal":
        return ControlSignal(A, Bfull, None, t0, te)

    def __call__(self, t: float) -> np.ndarray:
        if self.eta is None or t < self.t0 or t > self.te:
            return np.zeros(self.channels)
        u = self._cache.get(t)
        if u is None:
            w = scipy.linalg.expm(self.A.T * (self.te - t)) @ self.eta
            u = self.Bfull.T @ w
            self._cache[t] = u
        return u


@dataclass
class Trajectory:
    """Time-stamped states from numerical integration."""

    times: np.ndarray
    states: np.ndarray  # shape (len(times), n)
    endpoint_error: float = math.nan
    target_class_error: float = math.nan


def rk4_integrate(A: np.ndarray, Bfull: np.ndarray, u, z0: np.ndarray,
                  t0: float, te: float, step: float) -> Trajectory:
    """Classical fixed-step RK4 for dz/dt = A z + B u(t).

    The final step is shortened to land exactly on te.  ``u`` is any
    callable t -> input vector (a ControlSignal works as is).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    A = np.asarray(A, dtype=float)
    Bfull = np.asarray(Bfull, dtype=float)
    if Bfull.ndim == 1:
        Bfull = Bfull.reshape(-1, 1)
    z = np.asarray(z0, dtype=float).reshape(-1)
    if A.shape[0] != z.shape[0] or Bfull.shape[0] != z.shape[0]:
        raise ValueError("dimension mismatch between A, B and z0")

    def f(t, z):
        return A @ z + Bfull @ np.asarray(u(t), dtype=float)

    times = [t0]
    states = [z.copy()]
    t = t0
    while t < te - 1e-15 * max(1.0, abs(te)):
        h = min(step, te - t)
        k1 = f(t, z)
        k2 = f(t + h / 2, z + (h / 2) * k1)
        k3 = f(t + h / 2, z + (h / 2) * k2)
        k4 = f(t + h, z + h * k3)
        z = z + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t + h
        times.append(t)
        states.append(z.copy())
    return Trajectory(times=np.array(times), states=np.array(states))


def min_energy_control(A: np.ndarray, Bfull: np.ndarray, z0: np.ndarray,
                       z_target: np.ndarray, t0: float, te: float,
                       quad_steps: int = 512) -> ControlSignal:
    """Design the Gramian-based minimum-energy steering input.

    The Gramian solve happens in controllability-decomposed coordinates
    so uncontrollable (singular-Gramian) systems are handled: the
    displacement d = z_target - e^{A(te-t0)} z0 must have no component
    in the uncontrollable block, otherwise UnreachableTargetError is
    raised with that residual.
    """
    A = np.asarray(A, dtype=float)
    Bfull = np.asarray(Bfull, dtype=float)
    if Bfull.ndim == 1:
        Bfull = Bfull.reshape(-1, 1)
    z0 = np.asarray(z0, dtype=float).reshape(-1)
    z_target = np.asarray(z_target, dtype=float).reshape(-1)
    d = z_target - scipy.linalg.expm(A * (te - t0)) @ z0
    kd = kalman_decomposition(A, Bfull)
    k = kd.ctrb_dim
    dprime = kd.T @ d
    residual = dprime[k:]
    atol = 1e-8 * max(1.0, float(np.max(np.abs(d))) if d.size else 0.0)
    if residual.size and float(np.max(np.abs(residual))) > atol:
        raise UnreachableTargetError(
            "required displacement leaves the controllable subspace "
            f"(uncontrollable residual, max |r| = {np.max(np.abs(residual)):.3e})",
            residual=residual)
    if k == 0:
        return ControlSignal.zero(A, Bfull, t0, te)
    W11 = ctrb_gramian(kd.A11, kd.B_top, t0, te, quad_steps).W
    eta1 = np.linalg.solve(W11, dprime[:k])
    eta_prime = np.concatenate([eta1, np.zeros(A.shape[0] - k)])
    eta = kd.T.T @ eta_prime
    return ControlSignal(A, Bfull, eta, t0, te)


@dataclass(frozen=True)
class RealizationOutcome:
    """Scenario-level summary attached to a steered run."""

    realization: RealizationReport
    model: TransientModel
    endpoint_error: float
    target_class_error: float


def _class_error(z_end: np.ndarray, y_target: np.ndarray) -> float:
    """Distance between the class of z_end and the class of y_target.

    z_end is reduced with tolerance-based block constancy, then both
    representatives are compared on their lcm dimension.
    """
    r = reduce_vector(np.asarray(z_end, dtype=float),
                      CLASS_REDUCTION_TOL).irreducible
    diff = vec_sub(r, to_float(np.asarray(y_target)))
    return float(np.max(np.abs(diff))) if diff.size else 0.0


def run_transient_scenario(s1: LinSys, s2: LinSys, sc: Scenario,
                           alpha=None, beta=None, masses=None,
                           steer: bool = True):
    """Run a full steered transient between two systems.

    Builds the blend model, lifts start and target states onto the lcm
    dimension, designs the steering input (or uses zero input when
    ``steer`` is False), integrates, and fills in endpoint and class
    errors.  Returns (Trajectory, RealizationOutcome).
    """
    model = build_transient_model(s1, s2, alpha=alpha, beta=beta,
                                  masses=masses)
    report = check_realization(s1, s2)
    n = model.dim
    x_start = np.asarray(sc.x_start, dtype=float).reshape(-1)
    y_target = np.asarray(sc.y_target, dtype=float).reshape(-1)
    if x_start.shape[0] != s1.dim:
        raise ValueError("x_start dimension does not match the first system")
    if y_target.shape[0] != s2.dim:
        raise ValueError("y_target dimension does not match the second system")
    z0 = np.kron(x_start, np.ones(n // s1.dim))
    z_star = np.kron(y_target, np.ones(n // s2.dim))
    A = to_float(model.base.A)
    Bfull = to_float(model.base.B)
    if steer:
        try:
            u = min_energy_control(A, Bfull, z0, z_star, sc.t0, sc.te,
                                   sc.quad_steps)
        except UnreachableTargetError as exc:
            raise UnreachableTargetError(
                f"{exc} -- realization check: realizable="
                f"{report.realizable}, dim_C1={report.dim_C1}, "
                f"dim_C2={report.dim_C2}", residual=exc.residual) from exc
    else:
        u = ControlSignal.zero(A, Bfull, sc.t0, sc.te)
    traj = rk4_integrate(A, Bfull, u, z0, sc.t0, sc.te, sc.step)
    z_end = traj.states[-1]
    traj.endpoint_error = float(np.max(np.abs(z_end - z_star)))
    traj.target_class_error = _class_error(z_end, y_target)
    outcome = RealizationOutcome(realization=report, model=model,
                                 endpoint_error=traj.endpoint_error,
                                 target_class_error=traj.target_class_error)
    return traj, outcome


def export_trajectory(tr: Trajectory, path) -> None:
    """Write the trajectory as CSV: header t,z1,...,zn then one row per
    sample, 17 significant digits (lossless float round trip)."""
    n = tr.states.shape[1] if tr.states.ndim == 2 and tr.states.size else 0
    with open(path, "w") as fh:
        header = "t" + "".join(f",z{i + 1}" for i in range(n))
        fh.write(header + "\n")
        for t, row in zip(tr.times, tr.states):
            fh.write(f"{t:.17g}" + "".join(f",{x:.17g}" for x in row) + "\n")
