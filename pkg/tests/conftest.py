import numpy as np
import pytest

from noisyleader import Channel, Distortion, PayoffMatrix


@pytest.fixture
def fig_u() -> PayoffMatrix:
    """The worked instance used throughout: payoff ((-8, 6), (2, -2))."""
    return PayoffMatrix(-8.0, 6.0, 2.0, -2.0)


@pytest.fixture
def fig_w() -> Channel:
    return Channel(0.8, 0.2, 0.2, 0.8)


@pytest.fixture
def fig_t() -> Distortion:
    return Distortion(0.9, 0.1, 0.1, 0.9)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
