import sys

import numpy as np
import pytest

from eulerwedge.cones import sl2_sum_element
from eulerwedge.liecore import sl2, sl2_elements


@pytest.fixture(scope="session")
def s():
    """Named sl2 elements h0, k0, z0, e0, f0."""
    return sl2_elements()


@pytest.fixture(scope="session")
def alg():
    return sl2()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pair(a, b):
    return sl2_sum_element([a, b])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(mod.RESULTS, key=lambda r: r.number):
        terminalreporter.write_line(r.line())
