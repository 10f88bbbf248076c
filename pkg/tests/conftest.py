import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def series_exp(M, terms=30):
    """Truncated power series sum_{k<terms} M^k / k!; oracle for small |M|."""
    out = np.eye(M.shape[0], dtype=np.result_type(M, float))
    term = out.copy()
    for k in range(1, terms):
        term = term @ M / k
        out = out + term
    return out


def rk4(f, y0, t, steps):
    """Classic fixed-step Runge-Kutta; independent oracle for linear flows."""
    y = np.asarray(y0)
    y = y.astype(np.result_type(y, float))
    h = t / steps
    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + h / 2 * k1)
        k3 = f(y + h / 2 * k2)
        k4 = f(y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
