import numpy as np
import pytest

from sdofkit.chansim import gaussian_channels
from sdofkit.region import AntennaConfig


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def cstd(rng, rows, cols):
    """Standard complex Gaussian matrix."""
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def channels_for(tup, rng):
    return gaussian_channels(AntennaConfig(*tup), rng)
