"""Shared fixtures."""

import pytest

from hardy_moments.divisor import build_table
from hardy_moments.numerics import PrecisionContext


@pytest.fixture
def ctx():
    """Default 128-bit working precision."""
    return PrecisionContext(128)


@pytest.fixture(scope="session")
def small_table():
    """Divisor table up to 2000, shared by the whole run."""
    return build_table(2000)
