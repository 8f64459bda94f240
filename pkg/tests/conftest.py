import numpy as np
import pytest

from zoscgs import BlackBoxOracle, FunctionObjective

ACCEPTANCE_LINES: list[str] = []


def record_criterion(name: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def linear_oracle(c):
    c = np.asarray(c, dtype=float)
    return BlackBoxOracle(FunctionObjective(lambda X: X @ c, c.size, vectorized=True))


def abs_oracle():
    return BlackBoxOracle(FunctionObjective(lambda X: np.abs(X[:, 0]), 1, vectorized=True))
