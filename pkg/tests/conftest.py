import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import acceptance_log  # noqa: E402
from helpers import graphs_up_to  # noqa: E402


@pytest.fixture(scope="session")
def small_graphs():
    return graphs_up_to(5)


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)
