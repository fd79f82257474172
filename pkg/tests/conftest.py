"""Shared fixtures."""
import pytest

from penney.patterns import CoinSpec


@pytest.fixture
def fair() -> CoinSpec:
    return CoinSpec.fair()
