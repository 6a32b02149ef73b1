"""Minimal pytest configuration for oneleg tests."""

from __future__ import annotations

import sys
from collections.abc import Generator

import numpy as np
import pytest
from loguru import logger

from oneleg.entropy.grid import GridState, History


@pytest.fixture(scope="session", autouse=True)
def _configure_loguru_for_tests():
    """Strip all loguru sinks and keep only stderr for test runs.

    Prevents 'I/O operation on closed file' errors during pytest teardown
    caused by file sinks outliving the test process.
    """
    logger.remove()
    logger.add(sys.stderr, level="INFO")
    yield
    logger.remove()


# ---------------------------------------------------------------------------
# Settings Override Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="function", autouse=True)
def reset_settings() -> Generator[None]:
    """Reset settings to clean state before each test (autouse).

    This ensures test isolation by clearing the settings cache before and
    after each test. Modules read settings via get_settings() or
    config.settings.
    """
    from oneleg.core import config
    from oneleg.core.config import get_settings

    get_settings.cache_clear()
    config.settings = get_settings()

    yield

    get_settings.cache_clear()
    config.settings = get_settings()


# ---------------------------------------------------------------------------
# State Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so property tests are reproducible."""
    return np.random.default_rng(20240611)


def random_positive_state(rng: np.random.Generator, n_species: int, n: int, low: float = 0.5) -> GridState:
    """Smooth-ish positive state: low + random Fourier modes, bounded away from 0."""
    x = np.arange(n) / n
    values = np.empty((n_species, n))
    for j in range(n_species):
        a, b = rng.uniform(-0.4, 0.4, size=2)
        values[j] = 1.0 + low + a * np.sin(2 * np.pi * x) + b * np.cos(4 * np.pi * x) + 0.05 * rng.random(n)
    return GridState(values=values)


def constant_state(value: float, n_species: int, n: int) -> GridState:
    return GridState(values=np.full((n_species, n), value))


@pytest.fixture
def constant_history() -> History:
    """Two-state SKT window with every node equal to 2."""
    state = constant_state(2.0, 2, 16)
    return History(states=(state, state))
