import csv
import math
import random

import numpy as np
import pytest

from conftest import rand_system
from dimvar import (ControlSignal, LinSys, Scenario, Trajectory,
                    UnreachableTargetError, export_trajectory, in_span,
                    mat, min_energy_control, rk4_integrate,
                    run_transient_scenario, vec)
from dimvar.controllability import ctrb_matrix, ctrb_subspace
from dimvar.numerics import rank, to_float


def test_scenario_validation():
    Scenario(0.0, 1.0, np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        Scenario(1.0, 1.0, np.zeros(2), np.zeros(2))
    with pytest.raises(ValueError):
        Scenario(0.0, 1.0, np.zeros(2), np.zeros(2), step=-0.1)
    with pytest.raises(ValueError):
        Scenario(0.0, 0.005, np.zeros(2), np.zeros(2), step=1e-3)


def test_rk4_autonomous_decay():
    A = np.array([[-1.0]])
    B = np.zeros((1, 1))
    tr = rk4_integrate(A, B, lambda t: np.zeros(1), np.array([1.0]),
                       0.0, 1.0, 1e-3)
    assert abs(tr.times[-1] - 1.0) < 1e-12
    assert abs(tr.states[-1, 0] - math.exp(-1.0)) < 1e-10


def test_rk4_nilpotent_with_input():
    # double integrator driven by u = 1: exact cubic/quadratic answer
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    B = np.array([[0.0], [1.0]])
    tr = rk4_integrate(A, B, lambda t: np.ones(1), np.zeros(2),
                       0.0, 2.0, 1e-3)
    assert abs(tr.states[-1, 0] - 2.0) < 1e-10   # t^2/2
    assert abs(tr.states[-1, 1] - 2.0) < 1e-12   # t


def test_rk4_final_step_shortened():
    tr = rk4_integrate(np.zeros((1, 1)), np.zeros((1, 1)),
                       lambda t: np.zeros(1), np.array([3.0]),
                       0.0, 0.0105, 1e-3)
    assert abs(tr.times[-1] - 0.0105) < 1e-15
    assert len(tr.times) == 12  # 10 full steps + 1 short step + start


def test_rk4_is_fourth_order():
    A = np.array([[0.0, 1.0], [-2.0, -0.5]])
    z0 = np.array([1.0, 0.0])
    exact = None
    errs = []
    import scipy.linalg
    exact = scipy.linalg.expm(A * 1.0) @ z0
    for h in (1e-2, 5e-3):
        tr = rk4_integrate(A, np.zeros((2, 1)), lambda t: np.zeros(1),
                           z0, 0.0, 1.0, h)
        errs.append(np.max(np.abs(tr.states[-1] - exact)))
    ratio = errs[0] / errs[1]
    assert 12.0 < ratio < 20.0  # halving h divides the error by ~16


def test_control_signal_zero_and_window():
    A = np.zeros((2, 2))
    B = np.eye(2)
    u0 = ControlSignal.zero(A, B, 0.0, 1.0)
    assert np.array_equal(u0(0.5), np.zeros(2))
    u = ControlSignal(A, B, np.array([1.0, 2.0]), 0.0, 1.0)
    assert np.array_equal(u(0.5), [1.0, 2.0])  # expm of 0 matrix
    assert np.array_equal(u(-0.1), np.zeros(2))
    assert np.array_equal(u(1.1), np.zeros(2))
    assert u(0.5) is u._cache[0.5]


def test_min_energy_double_integrator_oracle():
    # steer (0,0) -> (1,0) on [0,1]: eta = (12, -6), u(0) = 6, u(1) = -6
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    B = np.array([[0.0], [1.0]])
    u = min_energy_control(A, B, np.zeros(2), np.array([1.0, 0.0]), 0.0, 1.0)
    assert np.max(np.abs(u.eta - np.array([12.0, -6.0]))) < 1e-8
    assert abs(u(0.0)[0] - 6.0) < 1e-8
    tr = rk4_integrate(A, B, u, np.zeros(2), 0.0, 1.0, 1e-3)
    assert np.max(np.abs(tr.states[-1] - [1.0, 0.0])) < 1e-9


def test_min_energy_random_controllable():
    rng = np.random.default_rng(91)
    done = 0
    while done < 20:
        n = int(rng.integers(1, 5))
        A = rng.uniform(-1, 1, (n, n))
        B = rng.uniform(-1, 1, (n, int(rng.integers(1, 3))))
        C = np.hstack([np.linalg.matrix_power(A, k) @ B for k in range(n)])
        sv = np.linalg.svd(C, compute_uv=False)
        if sv.min() < 0.1 * sv.max():
            continue
        z0 = rng.uniform(-1, 1, n)
        zt = rng.uniform(-1, 1, n)
        u = min_energy_control(A, B, z0, zt, 0.0, 1.0)
        tr = rk4_integrate(A, B, u, z0, 0.0, 1.0, 1e-3)
        assert np.max(np.abs(tr.states[-1] - zt)) < 1e-6 * (1 + np.max(np.abs(zt)))
        done += 1


def test_min_energy_unreachable():
    A = np.diag([1.0, 2.0])
    B = np.array([[1.0], [0.0]])  # second coordinate uncontrollable
    with pytest.raises(UnreachableTargetError) as exc:
        min_energy_control(A, B, np.zeros(2), np.array([0.0, 1.0]), 0.0, 1.0)
    assert np.max(np.abs(exc.value.residual)) > 0.1


def test_min_energy_uncontrollable_but_consistent():
    # target reachable because the uncontrollable part drifts there itself
    A = np.diag([1.0, -1.0])
    B = np.array([[1.0], [0.0]])
    z0 = np.array([0.0, 1.0])
    zt = np.array([1.0, math.exp(-1.0)])
    u = min_energy_control(A, B, z0, zt, 0.0, 1.0)
    tr = rk4_integrate(A, B, u, z0, 0.0, 1.0, 1e-3)
    assert np.max(np.abs(tr.states[-1] - zt)) < 1e-8


def test_uncontrollable_block_autonomy():
    # inputs never disturb the uncontrollable coordinate
    A = np.diag([0.5, -2.0])
    B = np.array([[1.0], [0.0]])
    u = ControlSignal(A, B, np.array([3.0, -1.0]), 0.0, 1.0)
    tr = rk4_integrate(A, B, u, np.array([1.0, 1.0]), 0.0, 1.0, 1e-3)
    assert abs(tr.states[-1, 1] - math.exp(-2.0)) < 1e-8


def test_run_transient_scenario_example1(ex1_s1, ex1_s2):
    sc = Scenario(0.0, 1.0, vec([0, 1]), vec([1, 1, 1]))
    traj, out = run_transient_scenario(ex1_s1, ex1_s2, sc,
                                       alpha="3/2", beta="1/2")
    assert out.realization.realizable
    assert out.model.dim == 6
    assert traj.states.shape[1] == 6
    assert traj.endpoint_error < 1e-6
    assert traj.target_class_error < 1e-5
    assert np.array_equal(traj.states[0],
                          [0, 0, 0, 1, 1, 1])  # lifted start state


def test_run_transient_scenario_forward_consistency(ex1_s1, ex1_s2):
    # a target produced by a forward (unsteered) run is steered back to
    # within tolerance
    sc0 = Scenario(0.0, 1.0, vec([1, 0]), vec([0, 0, 0]))
    free, _ = run_transient_scenario(ex1_s1, ex1_s2, sc0,
                                     alpha="3/2", beta="1/2", steer=False)
    z_end = free.states[-1]
    y = np.array([z_end[0:2].mean(), z_end[2:4].mean(), z_end[4:6].mean()])
    sc1 = Scenario(0.0, 1.0, vec([1, 0]), y)
    traj, out = run_transient_scenario(ex1_s1, ex1_s2, sc1,
                                       alpha="3/2", beta="1/2")
    assert traj.target_class_error < 1e-5


def test_run_transient_scenario_dim_checks(ex1_s1, ex1_s2):
    with pytest.raises(ValueError):
        run_transient_scenario(ex1_s1, ex1_s2,
                               Scenario(0.0, 1.0, vec([0, 1, 0]),
                                        vec([1, 1, 1])),
                               alpha=1, beta=1)
    with pytest.raises(ValueError):
        run_transient_scenario(ex1_s1, ex1_s2,
                               Scenario(0.0, 1.0, vec([0, 1]), vec([1, 1])),
                               alpha=1, beta=1)


def test_run_transient_scenario_unreachable():
    # both blended inputs push the same single direction
    s1 = LinSys("a", mat([[0, 0], [0, 0]]), mat([[1], [0]]))
    s2 = LinSys("b", mat([[0, 0], [0, 0]]), mat([[1], [0]]))
    sc = Scenario(0.0, 1.0, vec([0, 0]), vec([0, 1]))
    with pytest.raises(UnreachableTargetError) as exc:
        run_transient_scenario(s1, s2, sc, alpha=1, beta=1)
    assert "realizable" in str(exc.value)


def test_simulation_class_consistency_under_lift(ex1_s1, ex1_s2):
    # running against the pre-lifted second system lands in the same class
    from dimvar import lift_system
    sc = Scenario(0.0, 1.0, vec([0, 1]), vec([1, 1, 1]))
    _, out1 = run_transient_scenario(ex1_s1, ex1_s2, sc, alpha="3/2",
                                     beta="1/2")
    sc2 = Scenario(0.0, 1.0, vec([0, 1]),
                   np.kron(np.array([1.0, 1.0, 1.0]), np.ones(2)))
    _, out2 = run_transient_scenario(ex1_s1, lift_system(ex1_s2, 6), sc2,
                                     alpha="3/2", beta="1/2")
    assert out2.target_class_error < 1e-5
    assert out1.model.dim == out2.model.dim == 6


def test_export_trajectory_round_trip(tmp_path):
    tr = Trajectory(times=np.array([0.0, 0.1, 0.2]),
                    states=np.array([[1.0, 2.0], [1 / 3, -2e-17],
                                     [0.1 + 0.2, 4.0]]))
    path = tmp_path / "out.csv"
    export_trajectory(tr, path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "z1", "z2"]
    assert len(rows) == 4
    back = np.array([[float(x) for x in r] for r in rows[1:]])
    assert np.array_equal(back[:, 0], tr.times)
    assert np.array_equal(back[:, 1:], tr.states)  # 17 digits are lossless


def test_export_trajectory_empty(tmp_path):
    tr = Trajectory(times=np.array([]), states=np.array([]))
    path = tmp_path / "empty.csv"
    export_trajectory(tr, path)
    assert path.read_text() == "t\n"
