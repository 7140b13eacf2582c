import pytest

from metgraph.calculus.piecewise_poly import PiecewisePolyFunction, trim_coefficients
from metgraph.core.refinement import reverse_edge, subdivide_at, subdivide_uniform
from metgraph.core.weighted_graph import GraphPoint
from metgraph.errors import ContinuityError, DegreeTooHigh, HostMismatch, UnknownEdge


def test_evaluate_star_function(star_function):
    assert star_function(GraphPoint(edge="RQ", t=1.0)) == pytest.approx(1.5)
    assert star_function.vertex_value("Q") == pytest.approx(1.5)
    assert star_function.vertex_value("S") == pytest.approx(3.0)


def test_evaluate_constant(star):
    f = PiecewisePolyFunction.constant(star, 1.0)
    assert f(GraphPoint(edge="QS", t=0.2)) == 1.0


def test_evaluate_linear(unit_segment):
    f = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0.0, 1.0)})
    assert f(GraphPoint(edge="e1", t=0.25)) == 0.25


def test_trim_coefficients():
    assert trim_coefficients([1.0, 2.0, 0.0, 0.0]) == (1.0, 2.0)
    assert trim_coefficients([0.0]) == (0.0,)
    assert trim_coefficients([]) == (0.0,)


def test_degree_and_affine(star_function):
    assert star_function.degree == 2
    assert not star_function.is_affine


def test_discontinuity_names_vertex(star):
    with pytest.raises(ContinuityError, match="'Q'"):
        PiecewisePolyFunction(
            graph=star,
            coefficients={"PQ": (1.0, 1.0), "QS": (0.0, 3.0), "RQ": (0.5, 0.0, 1.0)},
        )


def test_degree_above_four_rejected(unit_segment):
    with pytest.raises(DegreeTooHigh):
        PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0, 0, 0, 0, 0, 1)})


def test_missing_edge_rejected(star):
    with pytest.raises(UnknownEdge):
        PiecewisePolyFunction(graph=star, coefficients={"PQ": (1.0,), "QS": (1.0,)})


def test_unknown_edge_rejected(unit_segment):
    with pytest.raises(UnknownEdge):
        PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (1.0,), "e9": (1.0,)})


def test_arithmetic(star_function):
    doubled = star_function + star_function
    assert doubled(GraphPoint(edge="RQ", t=0.5)) == pytest.approx(1.5)
    assert (2 * star_function).coefficients == doubled.coefficients
    assert (star_function - star_function).degree == 0
    assert (star_function + 1.0).vertex_value("P") == pytest.approx(2.0)
    assert (-star_function).vertex_value("S") == pytest.approx(-3.0)


def test_arithmetic_type_error(star_function):
    with pytest.raises(TypeError):
        star_function * star_function


def test_arithmetic_host_mismatch(star_function, unit_segment):
    with pytest.raises(HostMismatch):
        star_function + PiecewisePolyFunction.zero(unit_segment)


def test_refine_keeps_values(star_function, random_point):
    fine, remap = subdivide_at(star_function.graph, GraphPoint(edge="RQ", t=0.3))
    moved = star_function.refine(remap)
    assert moved.graph == fine
    for _ in range(20):
        p = random_point(star_function.graph)
        assert moved(remap(p)) == pytest.approx(star_function(p), abs=1e-12)


def test_refine_uniform_keeps_values(random_graphs, random_function_factory, random_point):
    for g in random_graphs[:5]:
        f = random_function_factory(g)
        _, remap = subdivide_uniform(g, 3)
        moved = f.refine(remap)
        for _ in range(5):
            p = random_point(g)
            assert moved(remap(p)) == pytest.approx(f(p), abs=1e-9)


def test_refine_along_reversal(star_function):
    _, remap = reverse_edge(star_function.graph, "RQ")
    moved = star_function.refine(remap)
    # t^2 + 1/2 read from Q: (1 - s)^2 + 1/2
    assert moved.coefficients["RQ"] == pytest.approx((1.5, -2.0, 1.0))
