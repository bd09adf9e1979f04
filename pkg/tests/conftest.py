import numpy as np
import pytest

from qlct import verify
from qlct.signal import Grid2D, QSignal


@pytest.fixture(scope="session")
def basis22():
    """Shared tau = sigma = 2 basis (six modes), cached with the verify module."""
    return verify._basis(2.0, 2.0)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(1234)


@pytest.fixture()
def random_signal(rng):
    def make(grid: Grid2D, seed=None) -> QSignal:
        gen = np.random.default_rng(seed) if seed is not None else rng
        return QSignal(grid, gen.standard_normal((grid.nx, grid.ny, 4)))

    return make
