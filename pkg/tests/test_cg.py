import numpy as np
import pytest

from zoscgs import Box, L2Ball, NumericError, Simplex, cg_procedure


def test_hand_traced_unit_interval():
    # v0 = 0, gap 1, alpha = 1, u1 = 0, g1 = 1 + (0 - 1) = 0, gap 0 <= 0.1
    res = cg_procedure(np.array([1.0]), np.array([1.0]), 1.0, 0.1, Box(1, 0.0, 1.0))
    assert res.u[0] == 0.0
    assert res.inner_iters == 1
    assert res.lmo_calls == 2
    assert not res.truncated


def test_vertex_already_optimal_returns_immediately():
    Q = Simplex(4)
    g0 = np.array([3.0, -1.0, 2.0, 0.5])
    u0 = Q.lmo(g0)
    res = cg_procedure(g0, u0, 2.0, 1e-9, Q)
    np.testing.assert_array_equal(res.u, u0)
    assert (res.inner_iters, res.lmo_calls) == (0, 1)


def test_large_beta_returns_u0():
    Q = Simplex(3)
    g0, u0 = np.array([1.0, 2.0, 3.0]), np.array([0.2, 0.3, 0.5])
    gap0 = g0 @ (u0 - Q.lmo(g0))
    res = cg_procedure(g0, u0, 1.0, gap0, Q)
    np.testing.assert_array_equal(res.u, u0)
    assert res.inner_iters == 0


def test_truncation_flag():
    Q = Simplex(50)
    rng = np.random.default_rng(0)
    res = cg_procedure(rng.standard_normal(50), Q.vertex(), 100.0, 1e-14, Q, max_inner=3)
    assert res.truncated and res.inner_iters == 3 and res.lmo_calls == 3
    assert Q.contains(res.u, 1e-9)


def test_solves_prox_subproblem_on_ball():
    # min <g0,u> + eta/2 |u - u0|^2 over a large ball: interior solution u0 - g0/eta
    Q = L2Ball(3, 10.0)
    g0, u0, eta = np.array([0.3, -0.2, 0.1]), np.zeros(3), 2.0
    res = cg_procedure(g0, u0, eta, 1e-12, Q, max_inner=100_000)
    np.testing.assert_allclose(res.u, u0 - g0 / eta, atol=1e-5)


def test_rejects_nonfinite_gradient():
    with pytest.raises(NumericError):
        cg_procedure(np.array([np.nan]), np.array([0.0]), 1.0, 0.1, Box(1))
    with pytest.raises(ValueError):
        cg_procedure(np.array([1.0]), np.array([0.0]), 0.0, 0.1, Box(1))
