import cmath

import numpy as np
import pytest

ACCEPTANCE_LINES: list[str] = []


def unit_disc(rng, radius=1.0):
    """Uniform sample from the disc |z| <= radius."""
    return radius * np.sqrt(rng.uniform()) * cmath.exp(2j * np.pi * rng.uniform())


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
