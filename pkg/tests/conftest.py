import numpy as np
import pytest
from hypothesis import settings

from hardy_lab.fourier import CoeffVector
from hardy_lab.grid import Grid

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def grid256():
    return Grid(256)


def random_coeffs(rng, half_width, analytic=False):
    size = 2 * half_width + 1
    c = rng.standard_normal(size) + 1j * rng.standard_normal(size)
    if analytic:
        c[:half_width] = 0
    return CoeffVector(half_width, c)


def dft_oracle(samples, indices):
    """Coefficients by the defining sum, without the FFT."""
    n = samples.size
    theta = 2 * np.pi * np.arange(n) / n
    return np.array([np.sum(samples * np.exp(-1j * k * theta)) / n for k in indices])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
