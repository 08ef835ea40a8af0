import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

import _results  # noqa: E402
from toys import two_cliques, two_triangles_ego  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def cliques():
    return two_cliques()


@pytest.fixture
def ego_toy():
    return two_triangles_ego()


def pytest_terminal_summary(terminalreporter):
    if _results.LINES:
        terminalreporter.section("acceptance criteria")
        for line in _results.LINES:
            terminalreporter.write_line(line)
