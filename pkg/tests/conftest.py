import numpy as np
import pytest

from metgraph.core.generators import (
    circle,
    complete,
    lollipop,
    path,
    random_connected,
    segment,
    star_example,
    theta,
)
from metgraph.core.weighted_graph import GraphPoint


@pytest.fixture
def unit_segment():
    """Single edge e1 from A to B of length 1."""
    return segment()


@pytest.fixture
def unit_circle():
    """Circle of length 1 made of three edges of length 1/3."""
    return circle(1.0)


@pytest.fixture
def star():
    """Star P, Q, R, S with PQ = 1/2, QS = 1/2, RQ = 1."""
    return star_example()


@pytest.fixture
def k4():
    """Complete graph on four vertices with unit edges."""
    return complete(4)


@pytest.fixture
def theta_graph():
    """Three arcs of length 1/2 between A and B."""
    return theta()


@pytest.fixture
def rng():
    """Seeded generator so random property tests are reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture
def random_point(rng):
    """Factory drawing a random edge, then a uniform offset on it."""

    def _factory(g) -> GraphPoint:
        edge = g.edges[int(rng.integers(0, len(g.edges)))]
        return GraphPoint(edge=edge.id, t=float(rng.uniform(0.0, edge.length)))

    return _factory


@pytest.fixture
def random_graphs():
    """Thirty random connected graphs with 2 to 12 vertices and some cycles."""
    gen = np.random.default_rng(7)
    graphs = []
    for _ in range(30):
        n = int(gen.integers(2, 13))
        graphs.append(random_connected(gen, n, int(gen.integers(0, n + 1))))
    return graphs


@pytest.fixture
def tree():
    """Path v0 - v1 - v2 - v3 with edges of length 1, 2 and 3."""
    return path([1.0, 2.0, 3.0])


@pytest.fixture
def circle_with_tail():
    """Circle of length 1 with a tail of length 1/2 attached at v0."""
    return lollipop()
