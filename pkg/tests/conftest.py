import numpy as np
import pytest

from weberbeams.config import RunConfig
from weberbeams.scalar import ModeIndex


@pytest.fixture
def odd_mode():
    return ModeIndex.from_ratio("odd", -2.0, 0.995)


@pytest.fixture
def even_mode():
    return ModeIndex.from_ratio("even", -2.0, 0.995)


@pytest.fixture
def ref_config():
    return RunConfig().validate()


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
