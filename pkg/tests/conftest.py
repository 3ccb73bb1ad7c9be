import numpy as np
import pytest

PI = np.pi

# published pairs, typed in independently of the package's seed table
EQ_PRIMARY_H = [0, 0, PI, PI / 2, 0, PI, -PI / 2, PI, -PI / 2, PI / 2]
EQ_PRIMARY_V = [0, 0, -PI / 2, 0, -PI / 2, -PI / 2, 0, PI / 2, PI / 2, -PI / 2]
EQ_PAIR3_U = [0, PI / 2, 0]
EQ_PAIR3_V = [0, 0, PI]


def brute_acf(x, tau):
    """Textbook double-index autocorrelation, one lag at a time."""
    x = list(x)
    m = len(x)
    total = 0j
    for i in range(m):
        j = i + tau
        if 0 <= j < m:
            total += x[i] * np.conj(x[j])
    return total


def brute_dtft_power(x, psi):
    return abs(sum(xm * np.exp(-2j * k * psi) for k, xm in enumerate(x))) ** 2


def random_unimodular(rng, m):
    return np.exp(2j * np.pi * rng.random(m))


@pytest.fixture
def rng():
    return np.random.default_rng(20231014)


_ACCEPTANCE = {}


@pytest.fixture
def record():
    """Store a one-line verdict for the acceptance summary."""
    def _record(name, ok, detail):
        _ACCEPTANCE[name] = (ok, detail)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
