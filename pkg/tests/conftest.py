import numpy as np
import pytest

import helpers


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if helpers.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in helpers.VERDICTS:
            terminalreporter.write_line(line)
