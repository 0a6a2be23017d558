import numpy as np
import pytest

from matbp import NetworkSpec, init_weights

EXAMPLE_DIMS = (2, 3, 3, 2)
EXAMPLE_X = np.array([0.2, 0.8])
EXAMPLE_Y = np.array([1.0, 0.0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def example_spec():
    return NetworkSpec(EXAMPLE_DIMS, "logistic")


@pytest.fixture
def example_weights(example_spec):
    return init_weights(example_spec, 1)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
