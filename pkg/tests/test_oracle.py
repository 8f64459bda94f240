import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zoscgs import (
    BlackBoxOracle,
    DimensionError,
    DomainError,
    FunctionObjective,
    NoiseModel,
    evaluate,
    gen_quadratic_simplex,
    reset_counter,
)

from conftest import abs_oracle


def half_norm_sq(X):
    return 0.5 * np.einsum("ij,ij->i", X, X)


def test_quadratic_identity_value():
    oracle = BlackBoxOracle(FunctionObjective(half_norm_sq, 2, vectorized=True))
    out = evaluate(oracle, np.array([1.0, 0.0]))
    assert out.value == 0.5
    assert out.noise_applied == 0.0
    assert oracle.evaluations == 1


def test_constant_noise_shifts_value():
    oracle = BlackBoxOracle(FunctionObjective(half_norm_sq, 2, vectorized=True), NoiseModel("constant", 0.01))
    out = evaluate(oracle, [1.0, 0.0])
    assert out.value == pytest.approx(0.51, abs=1e-15)
    assert out.noise_applied == 0.01


def test_abs_value():
    assert evaluate(abs_oracle(), [0.3]).value == pytest.approx(0.3)


def test_counter_reset_sequences():
    oracle = abs_oracle()
    oracle.evaluate_batch(np.zeros((57, 1)))
    assert oracle.evaluations == 57
    reset_counter(oracle)
    assert oracle.evaluations == 0
    reset_counter(oracle)
    assert oracle.evaluations == 0
    evaluate(oracle, [0.1])
    reset_counter(oracle)
    evaluate(oracle, [0.1])
    assert oracle.evaluations == 1


def test_errors():
    oracle = abs_oracle()
    with pytest.raises(DomainError):
        oracle.evaluate([np.nan])
    with pytest.raises(DimensionError):
        oracle.evaluate([0.1, 0.2])
    assert oracle.evaluations == 0


@pytest.mark.parametrize("kind", ["none", "constant", "sign_of_first_coordinate", "bounded_sine"])
def test_noise_bounded_on_random_points(kind, rng):
    noise = NoiseModel(kind, 0.03, scale=0.01)
    X = rng.normal(scale=5.0, size=(10_000, 7))
    delta = noise(X)
    assert np.all(np.abs(delta) <= 0.03)
    # deterministic in x
    np.testing.assert_array_equal(delta, noise(X.copy()))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3), st.floats(0, 10))
def test_noise_bound_property(x, delta):
    for kind in ("constant", "sign_of_first_coordinate", "bounded_sine"):
        assert abs(NoiseModel(kind, delta, 0.5)(np.array(x))[0]) <= delta


def test_noise_model_validation():
    with pytest.raises(ValueError):
        NoiseModel("gaussian", 0.1)
    with pytest.raises(ValueError):
        NoiseModel("constant", -1.0)


def test_seeded_runs_bit_identical():
    inst = gen_quadratic_simplex(5, seed=3, xi_scale=0.1)
    seqs = []
    for _ in range(2):
        gen = np.random.default_rng(99)
        oracle = BlackBoxOracle(inst)
        vals = []
        for _ in range(20):
            x = gen.dirichlet(np.ones(5))
            xi = inst.sample_xi(gen, 1)
            vals.append(oracle.evaluate(x, xi).value)
        seqs.append(vals)
    assert seqs[0] == seqs[1]


def test_counter_atomic_under_threads():
    from concurrent.futures import ThreadPoolExecutor

    oracle = abs_oracle()
    with ThreadPoolExecutor(8) as pool:
        list(pool.map(lambda _: oracle.evaluate_batch(np.zeros((3, 1))), range(400)))
    assert oracle.evaluations == 1200
