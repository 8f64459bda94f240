import math

import numpy as np
import pytest

from zoscgs import DimensionError, SeededStream, sample_ball, sample_sphere


def test_sphere_d1_is_fair_sign():
    s = SeededStream(1, 0)
    draws = sample_sphere(s, 1, 10_000)[:, 0]
    assert set(np.unique(draws)) <= {-1.0, 1.0}
    n_pos = int((draws > 0).sum())
    # binomial(10^4, 1/2): 3 sigma = 150
    assert abs(n_pos - 5000) <= 3 * math.sqrt(10_000 * 0.25)


@pytest.mark.parametrize("d", [1, 2, 7, 100])
def test_sphere_unit_norm(d):
    E = sample_sphere(SeededStream(2, 0), d, 1000)
    np.testing.assert_allclose(np.linalg.norm(E, axis=1), 1.0, atol=1e-12)
    assert sample_sphere(SeededStream(2, 0), d).shape == (d,)


def test_sphere_moments_d3():
    E = sample_sphere(SeededStream(3, 0), 3, 100_000)
    tol = 3 * math.sqrt(1.0 / (3 * 100_000))
    assert np.all(np.abs(E.mean(axis=0)) <= tol)
    # E[e e^T] = I/d
    np.testing.assert_allclose(E.T @ E / E.shape[0], np.eye(3) / 3, atol=0.01)


def test_ball_d1_uniform_interval():
    X = sample_ball(SeededStream(40, 0), 1, 10_000)[:, 0]
    assert np.all(np.abs(X) <= 1.0)
    assert abs(X.mean()) <= 3 / math.sqrt(3 * 10_000)
    # empirical CDF against (t + 1)/2 at a few points
    for t in (-0.5, 0.0, 0.5):
        assert abs((X <= t).mean() - (t + 1) / 2) <= 3 * math.sqrt(0.25 / 10_000)


def test_ball_containment_and_disk_area_ratio():
    X = sample_ball(SeededStream(5, 0), 2, 100_000)
    r = np.linalg.norm(X, axis=1)
    assert np.all(r <= 1.0)
    assert abs((r <= 0.5).mean() - 0.25) <= 0.01


def test_ball_radial_law_high_dim():
    # P(||x|| <= t) = t^d
    X = sample_ball(SeededStream(6, 0), 10, 50_000)
    frac = (np.linalg.norm(X, axis=1) <= 0.9).mean()
    assert abs(frac - 0.9**10) <= 3 * math.sqrt(0.9**10 * (1 - 0.9**10) / 50_000)


def test_reproducible_and_stream_independent():
    a = sample_sphere(SeededStream(7, 0), 5, 1000)
    b = sample_sphere(SeededStream(7, 0), 5, 1000)
    c = sample_sphere(SeededStream(7, 1), 5, 1000)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, c)


def test_batched_draws_equal_sequential_draws():
    s1, s2 = SeededStream(8, 0), SeededStream(8, 0)
    batch = sample_sphere(s1, 4, 10)
    seq = np.array([sample_sphere(s2, 4) for _ in range(10)])
    np.testing.assert_array_equal(batch, seq)


def test_dimension_error():
    with pytest.raises(DimensionError):
        sample_sphere(SeededStream(0), 0)
