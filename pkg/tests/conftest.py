"""Pytest configuration and fixtures."""

import math

import numpy as np
import pytest

from mq_entanglement.models import DEFAULT_POLICY, NumericPolicy, SpinSystem
from mq_entanglement.presets import REFERENCE_COUPLING, pair_system, ring_system
from mq_entanglement.utils.logging import configure_logging


@pytest.fixture(autouse=True)
def stderr_logging() -> None:
    """Route structlog to the current stderr for every test."""
    configure_logging(None, verbose=False)


@pytest.fixture
def policy() -> NumericPolicy:
    """Default tolerances."""
    return DEFAULT_POLICY


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for random draws."""
    return np.random.default_rng(20031)


@pytest.fixture
def pair() -> SpinSystem:
    """Two spins, D = 2pi * 2950 rad/s."""
    return pair_system()


@pytest.fixture
def ring() -> SpinSystem:
    """Equal-coupling three-spin ring, D = 2pi * 2950 rad/s."""
    return ring_system()


@pytest.fixture
def unequal_triangle() -> SpinSystem:
    """Three spins with distinct couplings."""
    return SpinSystem(
        n_spins=3,
        couplings=(REFERENCE_COUPLING, -0.4 * REFERENCE_COUPLING, 2.0 * math.pi * 1100.0),
    )
