import math

import pytest

from metgraph.core.generators import path
from metgraph.core.weighted_graph import GraphPoint
from metgraph.errors import InvalidArgument, NotAnEndpoint, NotSeriesParallel, OffsetOutOfRange
from metgraph.utils.potential import effective_resistance
from metgraph.utils.resistance_reduction import (
    TwoTerminalNetwork,
    conductance_through,
    edge_deleted_resistance,
    endpoint_resistance,
    resistance_on_segment,
    series_parallel_resistance,
)


def test_conductance_through():
    assert conductance_through(1.0, 1.0) == 0.5
    assert conductance_through(2.0, math.inf) == 0.0


def test_bridge_has_infinite_deleted_resistance(unit_segment, star):
    assert edge_deleted_resistance(unit_segment, "e1") == math.inf
    for e in star.edges:
        assert edge_deleted_resistance(star, e.id) == math.inf
    assert endpoint_resistance(star, "RQ") == pytest.approx(1.0)


def test_circle_deleted_resistance(unit_circle):
    for e in unit_circle.edges:
        assert edge_deleted_resistance(unit_circle, e.id) == pytest.approx(2 / 3)
        assert endpoint_resistance(unit_circle, e.id) == pytest.approx(2 / 9)


@pytest.mark.parametrize("t", [0.0, 0.05, 0.2, 1 / 3])
def test_segment_formula_on_circle(unit_circle, t):
    assert resistance_on_segment(unit_circle, "e1", t, "v0") == pytest.approx(t - t * t)


@pytest.mark.parametrize("graph", ["theta_graph", "k4", "circle_with_tail", "star"])
def test_segment_formula_matches_solve(request, graph):
    g = request.getfixturevalue(graph)
    for e in g.edges:
        r_e = edge_deleted_resistance(g, e.id)
        for i in range(1, 11):
            t = e.length * i / 11
            for toward, point in ((e.u, GraphPoint(edge=e.id, t=t)), (e.v, GraphPoint(edge=e.id, t=e.length - t))):
                direct = effective_resistance(g, point, g.vertex_point(toward))
                assert resistance_on_segment(g, e.id, t, toward, r_e) == pytest.approx(direct, abs=1e-9)


def test_segment_formula_on_random_graphs(random_graphs):
    for g in random_graphs[:8]:
        e = g.edges[0]
        t = 0.3 * e.length
        direct = effective_resistance(g, GraphPoint(edge=e.id, t=t), g.vertex_point(e.u))
        assert resistance_on_segment(g, e.id, t, e.u) == pytest.approx(direct, abs=1e-9)


def test_resistance_bounds_on_random_graphs(random_graphs, random_point, rng):
    for g in random_graphs:
        p, q = random_point(g), random_point(g)
        assert effective_resistance(g, p, q) <= g.total_length + 1e-9
        e = g.edges[int(rng.integers(0, len(g.edges)))]
        s, t = rng.uniform(0.0, e.length, size=2)
        same_edge = effective_resistance(
            g, GraphPoint(edge=e.id, t=float(s)), GraphPoint(edge=e.id, t=float(t))
        )
        assert same_edge <= abs(s - t) + 1e-9 <= e.length + 1e-9
        for edge in g.edges:
            assert 0.0 <= endpoint_resistance(g, edge.id) / edge.length <= 1.0 + 1e-12


def test_segment_formula_errors(star):
    with pytest.raises(NotAnEndpoint):
        resistance_on_segment(star, "PQ", 0.1, "R")
    with pytest.raises(OffsetOutOfRange):
        resistance_on_segment(star, "PQ", 0.7, "P")


def test_series_path():
    g = path([1.0, 2.0, 3.0])
    net = TwoTerminalNetwork(graph=g, x=g.vertex_point("v0"), y=g.vertex_point("v3"))
    assert series_parallel_resistance(net) == pytest.approx(6.0)


def test_circle_halves(unit_circle):
    net = TwoTerminalNetwork(
        graph=unit_circle, x=unit_circle.vertex_point("v0"), y=GraphPoint(edge="e2", t=1 / 6)
    )
    assert series_parallel_resistance(net) == pytest.approx(0.25)


def test_dead_ends_are_pruned(star):
    net = TwoTerminalNetwork(graph=star, x=star.vertex_point("P"), y=star.vertex_point("S"))
    assert series_parallel_resistance(net) == pytest.approx(1.0)


def test_interior_terminals(theta_graph):
    x, y = GraphPoint(edge="e1", t=0.1), theta_graph.vertex_point("B")
    net = TwoTerminalNetwork(graph=theta_graph, x=x, y=y)
    assert series_parallel_resistance(net) == pytest.approx(effective_resistance(theta_graph, x, y), abs=1e-12)
    assert series_parallel_resistance(net) == pytest.approx(0.35 * 0.4 / 0.75)


def test_wheatstone_bridge_is_not_series_parallel(k4):
    net = TwoTerminalNetwork(graph=k4, x=k4.vertex_point("v0"), y=k4.vertex_point("v1"))
    with pytest.raises(NotSeriesParallel):
        series_parallel_resistance(net)


def test_random_series_parallel(series_parallel_graphs):
    for g, s, t in series_parallel_graphs:
        net = TwoTerminalNetwork(graph=g, x=g.vertex_point(s), y=g.vertex_point(t))
        expected = effective_resistance(g, net.x, net.y)
        assert series_parallel_resistance(net) == pytest.approx(expected, rel=1e-9)


def test_terminals_must_differ(star):
    with pytest.raises(InvalidArgument):
        TwoTerminalNetwork(graph=star, x=star.vertex_point("Q"), y=GraphPoint(edge="PQ", t=0.5))
