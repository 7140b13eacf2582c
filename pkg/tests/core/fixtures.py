import pytest

from metgraph.core.refinement import refine_at
from metgraph.core.weighted_graph import GraphPoint


@pytest.fixture
def star_cuts():
    """Two interior points of the star, on RQ and PQ."""
    return [GraphPoint(edge="RQ", t=0.4), GraphPoint(edge="PQ", t=0.1)]


@pytest.fixture
def refined_star(star, star_cuts):
    """The star refined at ``star_cuts``, with its point map."""
    return refine_at(star, star_cuts)
