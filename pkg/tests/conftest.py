import numpy as np
import pytest

from shiftsampling import Generator, shannon_kernel, zak_kernel

CUBIC = Generator.bspline(4)
QUADRATIC = Generator.bspline(3)


@pytest.fixture(scope="session")
def cubic_kernel():
    return zak_kernel(CUBIC, 0.0, 4096)


@pytest.fixture(scope="session")
def cubic_base(cubic_kernel):
    return shannon_kernel(cubic_kernel, 40)


@pytest.fixture(scope="session")
def quadratic_half_base():
    return shannon_kernel(zak_kernel(QUADRATIC, 0.5, 4096), 40)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
