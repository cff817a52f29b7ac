import numpy as np
import pytest

from grunskylab import CoefficientVector


def random_tail(rng, n=4, radius=2.0):
    """n complex numbers with modulus <= radius."""
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def random_vector(rng, zero=None, n=4):
    tail = random_tail(rng, n)
    if zero is not None:
        tail[zero - 2] = 0.0
    return CoefficientVector.from_tail(tail)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
