import numpy as np
import pytest

from metgraph.core.generators import random_series_parallel


@pytest.fixture
def series_parallel_graphs():
    """Twenty random two-terminal series-parallel graphs with their terminals."""
    gen = np.random.default_rng(11)
    return [random_series_parallel(gen, int(gen.integers(1, 9))) for _ in range(20)]
