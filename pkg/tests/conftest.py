from __future__ import annotations

import pytest

from corpus import corpus


@pytest.fixture(scope="session")
def small_corpus():
    """One representative per connected planar graph, n <= 8, m <= 14."""
    return corpus()
