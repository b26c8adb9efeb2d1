import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20071018)


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
SINGLET_DM = np.outer(SINGLET, SINGLET.conj())


ACCEPTANCE_RESULTS: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
