import numpy as np
import pytest

from qchan import BlochVector, QubitState, state_from_bloch


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture
def random_state(rng):
    """Factory for random (generally mixed) qubit states."""

    def make() -> QubitState:
        direction = rng.normal(size=3)
        direction /= np.linalg.norm(direction)
        radius = rng.uniform(0.0, 1.0) ** (1.0 / 3.0)
        return state_from_bloch(BlochVector.from_array(radius * direction))

    return make
