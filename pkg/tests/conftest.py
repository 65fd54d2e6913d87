import itertools

import numpy as np
import pytest


def naive_contract(chain):
    """Per-string matrix product; independent of the vectorized sweep in ``mps.contract``."""
    amps = np.zeros(chain.d**chain.n, dtype=complex)
    for digits in itertools.product(range(chain.d), repeat=chain.n):
        # digits[0] is site n (most significant)
        vec = chain.right
        for site, m in zip(range(1, chain.n + 1), reversed(digits)):
            vec = chain.site(site)[m] @ vec
        index = sum(m * chain.d**p for p, m in enumerate(reversed(digits)))
        amps[index] = chain.left @ vec
    return amps


def ket(s, d=2):
    """Flat index of a ket written as in ``|m_n ... m_1>``."""
    return int(s, d)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
