import math

import numpy as np
import pytest

from zoscgs import (
    BlackBoxOracle,
    FunctionObjective,
    NumericError,
    SeededStream,
    SmoothingConfig,
    estimate_gradient,
    single_direction_estimates,
    gen_quadratic_simplex,
    smoothed_value,
    theoretical_constants,
)
from zoscgs.sampling import Streams

from conftest import abs_oracle, linear_oracle


def quad_smoothed_abs(x, gamma, n=2_000_001):
    """f_gamma(x) for f = |.| in 1-D by trapezoid quadrature over u ~ U[-1, 1]."""
    u = np.linspace(-1.0, 1.0, n)
    return 0.5 * np.trapezoid(np.abs(x + gamma * u), u)


def closed_form_smoothed_abs(x, gamma):
    return (x * x + gamma * gamma) / (2 * gamma) if abs(x) <= gamma else abs(x)


def test_closed_form_matches_quadrature():
    for x in (-0.3, -0.2, -0.05, 0.0, 0.05, 0.19, 0.25):
        assert closed_form_smoothed_abs(x, 0.2) == pytest.approx(quad_smoothed_abs(x, 0.2), abs=1e-10)
    assert quad_smoothed_abs(0.0, 0.2) == pytest.approx(0.1, abs=1e-10)
    assert quad_smoothed_abs(0.05, 0.2) == pytest.approx(0.10625, abs=1e-10)


class TestEstimateGradient:
    def test_linear_single_direction(self):
        # with d=2 the first sphere draw is some e; check d <c,e> e directly
        oracle = linear_oracle([1.0, 0.0])
        s = Streams.from_seed(0)
        e = SeededStream(0, 0).generator.standard_normal(2)
        e /= np.linalg.norm(e)
        est = estimate_gradient(oracle, np.zeros(2), SmoothingConfig(0.1), 1, s.directions, s.xi)
        np.testing.assert_allclose(est.g, 2 * e[0] * e, atol=1e-12)
        assert est.batch == 1 and est.oracle_calls == 2
        assert oracle.evaluations == 2

    def test_linear_along_first_axis(self):
        # e = (1, 0) gives g = (d / 2 gamma) (2 gamma) e = (2, 0)
        oracle = linear_oracle([1.0, 0.0])

        class Fixed:
            generator = None

        import zoscgs.smoothing as sm

        orig = sm.sample_sphere
        sm.sample_sphere = lambda stream, d, n=None: np.array([[1.0, 0.0]])
        try:
            est = estimate_gradient(oracle, np.zeros(2), SmoothingConfig(0.1), 1, Fixed(), np.random.default_rng(0))
        finally:
            sm.sample_sphere = orig
        np.testing.assert_allclose(est.g, [2.0, 0.0], atol=1e-12)

    def test_abs_symmetric_zero(self):
        s = Streams.from_seed(1)
        est = estimate_gradient(abs_oracle(), np.zeros(1), SmoothingConfig(0.3), 5, s.directions, s.xi)
        np.testing.assert_array_equal(est.g, [0.0])

    def test_linear_mean_over_large_batch(self):
        c = np.array([1.0, 0.0])
        s = Streams.from_seed(2)
        B = 100_000
        est = estimate_gradient(linear_oracle(c), np.array([0.3, -0.1]), SmoothingConfig(0.1), B, s.directions, s.xi)
        d, M2 = 2, 1.0
        assert np.all(np.abs(est.g - c) <= 3 * math.sqrt(d * M2**2 / B))

    def test_counts_and_determinism_and_workers(self):
        inst = gen_quadratic_simplex(20, seed=4, xi_scale=0.05)
        x = inst.feasible_set.random_point(np.random.default_rng(0))
        outs = []
        for workers in (1, 1, 4):
            oracle = BlackBoxOracle(inst)
            s = Streams.from_seed(9)
            est = estimate_gradient(oracle, x, SmoothingConfig(0.01), 300, s.directions, s.xi, workers=workers)
            assert oracle.evaluations == 600 == est.oracle_calls
            outs.append(est.g)
        np.testing.assert_array_equal(outs[0], outs[1])
        np.testing.assert_array_equal(outs[0], outs[2])

    def test_nonfinite_value_reports_direction(self):
        oracle = BlackBoxOracle(FunctionObjective(lambda x: math.inf if x[0] > 0 else 0.0, 1))
        s = Streams.from_seed(0)
        with pytest.raises(NumericError, match="direction index"):
            estimate_gradient(oracle, np.zeros(1), SmoothingConfig(0.1), 4, s.directions, s.xi)

    def test_invalid_batch(self):
        s = Streams.from_seed(0)
        with pytest.raises(ValueError):
            estimate_gradient(abs_oracle(), np.zeros(1), SmoothingConfig(0.1), 0, s.directions, s.xi)


def test_single_direction_rows_average_to_batch_estimate():
    inst = gen_quadratic_simplex(6, seed=2, xi_scale=0.3)
    x = np.full(6, 1 / 6)
    cfg = SmoothingConfig(0.05)
    a, b = Streams.from_seed(5), Streams.from_seed(5)
    rows = single_direction_estimates(BlackBoxOracle(inst), x, cfg, 500, a.directions, a.xi)
    g = estimate_gradient(BlackBoxOracle(inst), x, cfg, 500, b.directions, b.xi).g
    assert rows.shape == (500, 6)
    np.testing.assert_allclose(rows.mean(axis=0), g, rtol=1e-10, atol=1e-12)


class TestSmoothedValue:
    n = 200_000

    def _value(self, oracle, x, gamma, seed=0):
        s = Streams.from_seed(seed)
        return smoothed_value(oracle, np.atleast_1d(x), SmoothingConfig(gamma), self.n, s.ball, s.xi)

    def test_linear_is_unchanged(self):
        c = np.array([0.6, -0.8, 0.0])
        x = np.array([0.2, 0.5, -1.0])
        assert self._value(linear_oracle(c), x, 0.3) == pytest.approx(c @ x, abs=3 * 0.3 * 1.0 / math.sqrt(self.n))

    @pytest.mark.parametrize("x, expected", [(0.0, 0.1), (0.05, 0.10625)])
    def test_abs_closed_form(self, x, expected):
        gamma = 0.2
        assert self._value(abs_oracle(), x, gamma) == pytest.approx(expected, abs=3 * gamma / math.sqrt(self.n))

    def test_counts_samples(self):
        oracle = abs_oracle()
        s = Streams.from_seed(0)
        smoothed_value(oracle, np.zeros(1), SmoothingConfig(0.1), 123, s.ball, s.xi)
        assert oracle.evaluations == 123


class TestConstants:
    def test_kappa_euclidean_d100(self):
        c = theoretical_constants(SmoothingConfig(0.1, p=2), 100, 1.0, 1.0)
        # min{2, ln 100} = 2 and d^(1 - 2/2) = 1
        assert c.kappa == pytest.approx(2 * math.sqrt(2))
        assert c.kappa == pytest.approx(2.8284, abs=1e-4)

    def test_q_infinity_branch(self):
        d = round(math.e**3)
        c = theoretical_constants(SmoothingConfig(0.1, p=1), d, 1.0, 1.0)
        assert c.kappa == pytest.approx(math.sqrt(2) * math.log(d) / d)
        assert math.log(d) == pytest.approx(3.0, abs=0.01)

    def test_lipschitz_gradient(self):
        assert theoretical_constants(SmoothingConfig(0.5), 1, 1.0, 1.0).L_fgamma == 2.0

    def test_bounds(self):
        d, M2, gamma, Delta = 100, 1.5, 0.05, 0.001
        c = theoretical_constants(SmoothingConfig(gamma, 2), d, 1.0, M2, Delta)
        kappa = math.sqrt(2) * 2
        assert c.second_moment_bound == pytest.approx(kappa * (d * M2**2 + d**2 * Delta**2 / (math.sqrt(2) * gamma**2)))
        assert c.sigma2_bound == pytest.approx(2 * math.sqrt(2) * 2 * d * M2**2)

    def test_rejects_bad_p(self):
        with pytest.raises(ValueError):
            SmoothingConfig(0.1, p=3)
        with pytest.raises(ValueError):
            SmoothingConfig(0.0)
