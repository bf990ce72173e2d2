import sys

import numpy as np
import pytest

from peribc import BarProblem, Case, Discretization

ALL_METHODS = ("LLEM", "EDM_full", "EDM", "EDM_I", "EDM_II", "VHM")
POLY_CASES = (Case.LINEAR, Case.QUADRATIC, Case.CUBIC, Case.QUARTIC)


@pytest.fixture
def quartic():
    return BarProblem(Case.QUARTIC)


@pytest.fixture
def disc8():
    return Discretization(8, 2)


def fd4_second(fun, x, step=1e-3):
    """Fourth-order central difference for ``fun''(x)``."""
    x = np.asarray(x, dtype=float)
    return (-fun(x + 2 * step) + 16 * fun(x + step) - 30 * fun(x)
            + 16 * fun(x - step) - fun(x - 2 * step)) / (12 * step**2)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
