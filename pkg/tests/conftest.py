import numpy as np
import pytest

from grushin.transform import default_grid


@pytest.fixture(scope="session")
def small_grid():
    """Coarse n=1 grid for fast transform tests."""
    return default_grid(1, max_degree=48, hermite_order=80, lambda_half_count=48)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
