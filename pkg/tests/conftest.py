import sys

import numpy as np
import pytest

from rdmd import build_pair, make_system, simulate


@pytest.fixture(scope="session")
def linear_clean():
    """Linear 2x2 centre, x0 = (1, 0), dt = 0.01, 500 steps."""
    return simulate(make_system("linear2x2"), x0=[1.0, 0.0], dt=0.01, steps=500)


@pytest.fixture(scope="session")
def linear_pair(linear_clean):
    return build_pair(linear_clean)


def random_stable_pair(rng, m, N, noise=0.0):
    """Snapshot pair of a random stable linear map, with optional Gaussian noise."""
    from rdmd import SnapshotPair
    A = rng.standard_normal((m, m))
    A *= 0.9 / max(abs(np.linalg.eigvals(A)))
    X = np.empty((m, N + 1))
    X[:, 0] = rng.standard_normal(m)
    for k in range(N):
        X[:, k + 1] = A @ X[:, k] + 0.1 * rng.standard_normal(m)
    X += noise * rng.standard_normal(X.shape)
    return SnapshotPair(X[:, :-1], X[:, 1:], 1.0, contiguous=True), A


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
