import math

import pytest

from slipmap.model import TouchdownState, touchdown_polar_from_cartesian
from slipmap.stability import special_theta
from slipmap.stiffness import stiffness_symmetric

ALPHA5 = math.pi / 9
E5 = 1.48

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture
def fig2_td():
    return touchdown_polar_from_cartesian(1.0, 0.1, 0.1)


@pytest.fixture(scope="session")
def fig5_K():
    th = special_theta(ALPHA5)
    return stiffness_symmetric(TouchdownState.from_energy(th, E5, ALPHA5), ALPHA5).K


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
