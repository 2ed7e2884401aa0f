"""Reference values are formed at 256 bits so comparisons keep their digits."""

import mpmath as mp
import pytest


@pytest.fixture(autouse=True)
def reference_precision():
    with mp.workprec(256):
        yield
