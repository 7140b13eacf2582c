import pytest

from metgraph.analyzer.reports import (
    currents_csv,
    eigenvector_csv,
    function_csv,
    measure_csv,
    read_measure_csv,
    spectrum_csv,
)
from metgraph.calculus.measure import GraphMeasure
from metgraph.calculus.piecewise_poly import PiecewisePolyFunction
from metgraph.core.weighted_graph import GraphPoint
from metgraph.errors import InvalidArgument, UnknownEdge
from metgraph.utils.canonical import canonical_measure
from metgraph.utils.spectral import compute_spectrum


def test_star_measure_csv(star, golden):
    assert measure_csv(canonical_measure(star)) == golden("star_canonical.csv")


def test_mixed_measure_csv(unit_segment):
    mu = GraphMeasure(
        graph=unit_segment,
        atoms=[(GraphPoint(edge="e1", t=0.25), -2.0)],
        densities={"e1": (1.0, 0.0, 3.0)},
    )
    assert measure_csv(mu) == "kind,location,c0,c1,c2\natom,e1:0.25,-2,,\ndensity,e1,1,0,3\n"


def test_zero_measure_csv(unit_segment):
    assert measure_csv(GraphMeasure.zero(unit_segment)) == "kind,location,c0\n"


def test_measure_round_trip(theta_graph):
    mu = canonical_measure(theta_graph)
    back = read_measure_csv(theta_graph, measure_csv(mu))
    assert back.total_mass() == pytest.approx(1.0, abs=1e-9)
    assert back.is_close(mu, 1e-11)


def test_read_measure_errors(unit_segment):
    with pytest.raises(InvalidArgument):
        read_measure_csv(unit_segment, "kind,location,c0\nblob,e1,1\n")
    with pytest.raises(InvalidArgument):
        read_measure_csv(unit_segment, "kind,location\natom,A\n")
    with pytest.raises(UnknownEdge):
        read_measure_csv(unit_segment, "kind,location,c0\ndensity,e9,1\n")


def test_function_csv_pads_coefficients(star):
    f = PiecewisePolyFunction(
        graph=star,
        coefficients={"PQ": (1.0,), "QS": (1.0, 0.0, 2.0), "RQ": (1.0, 0.0)},
    )
    assert function_csv(f) == "edge,c0,c1,c2\nPQ,1,0,0\nQS,1,0,2\nRQ,1,0,0\n"


def test_function_csv_constant(unit_segment):
    assert function_csv(PiecewisePolyFunction.zero(unit_segment)) == "edge,c0,c1\ne1,0,0\n"


def test_currents_csv():
    assert currents_csv({"e2": 0.5, "e1": -0.25}) == "edge,current\ne2,0.5\ne1,-0.25\n"


def test_spectrum_tables(unit_segment):
    spec = compute_spectrum(unit_segment, unit_segment.vertex_point("A"), h=0.25, k=2)
    lines = spectrum_csv(spec).splitlines()
    assert lines[0] == "n,lambda"
    assert [line.split(",")[0] for line in lines[1:]] == ["1", "2"]

    rows = eigenvector_csv(spec).splitlines()
    assert rows[0] == "n,point,value"
    # two eigenfunctions on five fine vertices, points given on the host model
    assert len(rows) == 1 + 2 * 5
    assert rows[1] == "1,A,0"
    assert {row.split(",")[1] for row in rows[1:]} == {"A", "B", "e1:0.25", "e1:0.5", "e1:0.75"}
