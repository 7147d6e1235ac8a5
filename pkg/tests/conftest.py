import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from holohide import HidingParams, SensorModel

WAVELENGTH = 633e-9
PITCH = 7.4e-6


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def quiet_params():
    """Default physics, sensor disabled."""
    return HidingParams(sensor=SensorModel.off())


def random_field_values(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def relative_l2(a, b):
    return np.linalg.norm(a - b) / np.linalg.norm(b)
