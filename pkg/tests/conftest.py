import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sic import _accel  # noqa: E402

ACCEPTANCE_LINES = []

EIGEN_PRINTED = [8.0, 3.00, 2.01, 1.01, 1.00, 0.98]
TOY = [10.0, 4.0, 2.0, 1.5, 0.0]


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    if request.param == "numba" and not _accel.HAVE_NUMBA:
        pytest.skip("numba not installed")
    before = _accel.numba_enabled()
    _accel.set_numba(request.param == "numba")
    yield request.param
    _accel.set_numba(before)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
