import numpy as np
import pytest

from metgraph.calculus.piecewise_poly import PiecewisePolyFunction
from metgraph.core.refinement import subdivide_at
from metgraph.core.weighted_graph import GraphPoint


@pytest.fixture
def star_function(star):
    """t + 1 on PQ, 3(t + 1/2) on QS, t^2 + 1/2 on RQ."""
    return PiecewisePolyFunction(
        graph=star,
        coefficients={"PQ": (1.0, 1.0), "QS": (1.5, 3.0), "RQ": (0.5, 0.0, 1.0)},
    )


@pytest.fixture
def min_half(unit_segment):
    """min(x, 1/2) on the unit segment refined at 1/2."""
    fine, _ = subdivide_at(unit_segment, GraphPoint(edge="e1", t=0.5))
    return PiecewisePolyFunction(graph=fine, coefficients={"e1_1": (0.0, 1.0), "e1_2": (0.5,)})


@pytest.fixture
def random_function_factory(rng):
    """Factory for random continuous piecewise cubics.

    Vertex values are drawn first; on each edge the cubic interpolates the two
    endpoint values and gets random curvature in between.
    """

    def _factory(g, degree: int = 3) -> PiecewisePolyFunction:
        values = {v: float(rng.normal()) for v in g.vertices}
        coefficients = {}
        for e in g.edges:
            a, b = values[e.u], values[e.v]
            # bubble t (L - t) times a polynomial keeps both endpoint values
            bubble = np.polynomial.Polynomial([0.0, e.length, -1.0])
            extra = np.polynomial.Polynomial(rng.normal(size=max(degree - 1, 1)))
            base = np.polynomial.Polynomial([a, (b - a) / e.length])
            poly = base + (bubble * extra if degree >= 2 else 0.0)
            coefficients[e.id] = tuple(poly.coef)
        return PiecewisePolyFunction(graph=g, coefficients=coefficients)

    return _factory
