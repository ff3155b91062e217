import math

import numpy as np
import pytest

from superconc.figure import example_states
from superconc.linalg import PureState
from superconc.verifier import haar_unitary, random_pure_state, trial_rng

R2 = math.sqrt(0.5)


def ket(dims, entries):
    """State from ``{(i, j): amplitude}``."""
    a = np.zeros(dims[0] * dims[1], dtype=complex)
    for (i, j), v in entries.items():
        a[i * dims[1] + j] = v
    return PureState.normalized(*dims, a)


@pytest.fixture
def bell():
    return ket((2, 2), {(0, 0): R2, (1, 1): R2})


@pytest.fixture
def bell_minus():
    return ket((2, 2), {(0, 0): R2, (1, 1): -R2})


@pytest.fixture
def e00():
    return PureState.basis(2, 2, 0, 0)


@pytest.fixture
def e11():
    return PureState.basis(2, 2, 1, 1)


@pytest.fixture
def example_pair():
    return example_states()


@pytest.fixture
def rng():
    return trial_rng(20240501, 0)


def random_state(dims, seed, k=0):
    return random_pure_state(dims, trial_rng(seed, k))


def random_local(dims, seed):
    g = trial_rng(seed, 999)
    return haar_unitary(dims[0], g), haar_unitary(dims[1], g)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
