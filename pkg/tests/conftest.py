"""Shared fixtures."""

import pytest

from rpswalk import WalkConfig, generate_ensemble


@pytest.fixture(scope="session")
def small_scaled_ensemble():
    """40 rescaled paths of 100 steps, reused by estimator tests."""
    config = WalkConfig(steps=100, max_length=10, seed=5, scaled=True)
    return generate_ensemble(config, 40)
