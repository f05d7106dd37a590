import numpy as np
import pytest

from sparsebss import load_preset

# Ten 2-component velocity vectors of the worked clustering example; the
# golden tables in test_clustering derive from these.
WORKED_VELOCITIES = np.array(
    [
        [1, 2],
        [-2, 3],
        [1, 2],
        [2, 4],
        [5, 3],
        [-1, -2],
        [-4, 6],
        [5, 5],
        [-4, 6],
        [5, 10],
    ],
    dtype=float,
)


@pytest.fixture
def worked_velocities():
    return WORKED_VELOCITIES.copy()


@pytest.fixture(scope="session")
def example1():
    """(config, sources, clean mixtures) of the two-pulse 250 Hz scenario."""
    config = load_preset("example1")
    sources, mixtures = config.generate()
    return config, sources, mixtures
