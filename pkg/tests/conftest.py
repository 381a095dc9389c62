import numpy as np
import pytest
from motorprims.dynamics import PlanarChain


@pytest.fixture
def two_link():
    return PlanarChain.uniform_bars(2, mass=1.0, length=1.0)


@pytest.fixture
def five_link():
    return PlanarChain.uniform_bars(5, mass=1.0, length=1.0)


@pytest.fixture
def uneven_chain():
    return PlanarChain(masses=[1.5, 0.8, 0.4], lengths=[0.9, 0.7, 0.4], com_offsets=[0.3, 0.35, 0.1], inertias=[0.12, 0.05, 0.01])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
