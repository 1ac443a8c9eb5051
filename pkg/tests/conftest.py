import numpy as np
import pytest

from qdot import DeviceSpec, PaperSymmetric

BASE_T = 7.5
BASE_DELTA_EPS = 3.0
BASE_KAPPA = 20.0


def baseline_device(U=40.0, gamma=1.0):
    return DeviceSpec.from_level_difference(BASE_DELTA_EPS, gamma, PaperSymmetric(BASE_KAPPA, U))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
