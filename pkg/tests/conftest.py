import numpy as np
import pytest

from besovx import corpus
from besovx.grid import Grid


@pytest.fixture(scope="session")
def g1():
    return Grid(1, 8.0, 256)


@pytest.fixture(scope="session")
def g2():
    return Grid(2, 8.0, 128)


@pytest.fixture(scope="session")
def smooth1(g1):
    return corpus.smooth_corpus(g1, 6, 99)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240801)


@pytest.fixture(scope="session")
def verify_report():
    """Full verification suite at the reference seed, run once per session."""
    from besovx.verify import run_suite
    return run_suite()
