import json
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

TESTS = Path(__file__).resolve().parent
sys.path.insert(0, str(TESTS))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

FIXTURES = sorted((TESTS / "fixtures").glob("*.json"))

# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def load_fixture(path):
    return json.loads(Path(path).read_text())


def random_polygon(rng, N, jitter=0.25, radius=1.0, center=(0.0, 0.0)):
    """Star-shaped polygon with radial and angular noise; edges stay well away from zero."""
    th = 2 * np.pi * (np.arange(N) + rng.uniform(-0.3, 0.3, N)) / N
    r = radius * (1 + jitter * rng.uniform(-1, 1, N))
    return np.column_stack([center[0] + r * np.cos(th), center[1] + r * np.sin(th)])


def random_path(rng, N, T, noise=0.05):
    c0 = random_polygon(rng, N)
    c1 = random_polygon(rng, N, radius=1.3, center=rng.uniform(-1, 1, 2))
    s = np.linspace(0, 1, T + 1)[:, None, None]
    path = (1 - s) * c0 + s * c1
    path[1:-1] += noise * rng.standard_normal(path[1:-1].shape)
    return path


seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
