"""Shared fixtures for the hallgroups test suite"""

import numpy as np
import pytest

from core.d_functions import FastGrowthD, HallD
from core.specs import CyclicCenter, RelationCenter, SequenceParams


class SineD:
    """d(i) = 0, 1, 0, -1 repeating: antisymmetric, period 4 mod every q"""
    label = "sine"

    def __call__(self, i: int) -> int:
        return (0, 1, 0, -1)[i % 4]

    def to_config(self) -> dict:
        return {"name": "sine"}


@pytest.fixture
def sine_d():
    return SineD()


@pytest.fixture
def toy_params():
    """The small relation set used throughout the docs: c_2^35 = c_4^7 = 1"""
    return SequenceParams((2, 4), (35, 7))


@pytest.fixture
def gint_params():
    """2-adic shape of the real sequences: nu_2(d_j) = j + 1"""
    return SequenceParams((6, 36, 1080), (35, 33, 91))


@pytest.fixture
def gint_spec(gint_params):
    return RelationCenter(gint_params)


@pytest.fixture
def hall_spec():
    return CyclicCenter(HallD())


@pytest.fixture
def fastgrowth_spec():
    return CyclicCenter(FastGrowthD())


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
