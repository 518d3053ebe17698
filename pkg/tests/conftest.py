import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

SEED = int(os.environ.get("TBB_SEED", "20240"))


@pytest.fixture
def rng():
    return random.Random(SEED)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
