"""Shared fixtures for the qwalk-lab test suite."""

from __future__ import annotations

import pytest

from qwalk_lab.core.config import get_settings
from qwalk_lab.spectral.decomposition import SpectralDecomposition, decompose
from qwalk_lab.walks.coins import standard_coin
from qwalk_lab.walks.graphs import cycle_graph
from qwalk_lab.walks.operators import UnitaryWalk, build_coined_walk


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale sweeps and scaling fits")


@pytest.fixture(autouse=True)
def _fresh_settings():
    """Settings are cached per process; tests that patch QWLAB_* env vars need a reload."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _hadamard_cycle(n: int) -> UnitaryWalk:
    return build_coined_walk(cycle_graph(n), standard_coin("hadamard", 2))


@pytest.fixture
def cycle4_walk() -> UnitaryWalk:
    return _hadamard_cycle(4)


@pytest.fixture
def cycle8_walk() -> UnitaryWalk:
    return _hadamard_cycle(8)


@pytest.fixture
def cycle8_spec(cycle8_walk) -> SpectralDecomposition:
    return decompose(cycle8_walk)


@pytest.fixture
def cycle4_spec(cycle4_walk) -> SpectralDecomposition:
    return decompose(cycle4_walk)
