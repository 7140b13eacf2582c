import numpy as np
import pytest

from metgraph.calculus.measure import GraphMeasure, measures_close
from metgraph.calculus.operators import dirichlet_inner, laplacian
from metgraph.calculus.piecewise_poly import PiecewisePolyFunction
from metgraph.core.generators import complete, cycle
from metgraph.core.weighted_graph import GraphPoint
from metgraph.errors import InvalidArgument, InvalidPoint, MassNotZero
from metgraph.utils.kirchhoff import (
    VertexFunction,
    affine_approximation,
    discrete_laplacian,
    interpolate_affine,
    laplacian_matrix,
    restrict_to_vertices,
    solve_grounded,
    spanning_tree_count,
    vertex_atoms,
    vertex_resistance_matrix,
    weak_convergence_errors,
)


def test_segment_matrix(unit_segment):
    np.testing.assert_array_equal(laplacian_matrix(unit_segment).matrix, [[1.0, -1.0], [-1.0, 1.0]])


def test_star_matrix(star):
    q = laplacian_matrix(star).matrix
    np.testing.assert_allclose(np.diag(q), [2.0, 5.0, 1.0, 2.0])
    assert q[0, 1] == -2.0
    assert q[0, 2] == 0.0


def test_matrix_invariants(random_graphs):
    for g in random_graphs:
        q = laplacian_matrix(g)
        np.testing.assert_allclose(q.matrix.sum(axis=1), 0.0, atol=1e-12)
        np.testing.assert_array_equal(q.matrix, q.matrix.T)
        assert q.rank() == len(g.vertices) - 1


def test_quadratic_form_is_energy(random_graphs, rng):
    for g in random_graphs[:10]:
        x = rng.normal(size=len(g.vertices))
        f = interpolate_affine(g, VertexFunction(graph=g, values=x))
        assert laplacian_matrix(g).quadratic_form(x) == pytest.approx(dirichlet_inner(f, f), rel=1e-9)


def test_discrete_laplacian_segment(unit_segment):
    f = VertexFunction(graph=unit_segment, values=[0.0, 1.0])
    assert discrete_laplacian(unit_segment, f) == [("A", -1.0), ("B", 1.0)]


def test_discrete_laplacian_of_constant(star):
    assert discrete_laplacian(star, VertexFunction(graph=star, values=[2.0] * 4)) == []


def test_discrete_matches_continuous(star):
    f = VertexFunction(graph=star, values=[0.0, 3.0, 3.0, 3.0])
    expected = laplacian(interpolate_affine(star, f))
    assert measures_close(vertex_atoms(star, discrete_laplacian(star, f)), expected, 1e-12)


def test_discrete_matches_continuous_on_random_graphs(random_graphs, rng):
    for i in range(50):
        g = random_graphs[i % len(random_graphs)]
        f = VertexFunction(graph=g, values=rng.normal(size=len(g.vertices)))
        atoms = discrete_laplacian(g, f)
        expected = laplacian(interpolate_affine(g, f))
        assert measures_close(vertex_atoms(g, atoms), expected, 1e-9)
        qf = laplacian_matrix(g).matrix @ f.values
        by_vertex = dict(atoms)
        for v in g.vertices:
            assert qf[g.vertex_index[v]] == pytest.approx(by_vertex.get(v, 0.0), abs=1e-9)


def test_interpolate_and_restrict(unit_segment, random_graphs, rng):
    f = interpolate_affine(unit_segment, VertexFunction(graph=unit_segment, values=[0.0, 1.0]))
    assert f.coefficients == {"e1": (0.0, 1.0)}
    for g in random_graphs[:5]:
        values = rng.normal(size=len(g.vertices))
        back = restrict_to_vertices(interpolate_affine(g, VertexFunction(graph=g, values=values)))
        np.testing.assert_allclose(back.values, values, atol=1e-12)


def test_vertex_function_validation(unit_segment):
    with pytest.raises(InvalidArgument):
        VertexFunction(graph=unit_segment, values=[1.0, 2.0, 3.0])
    with pytest.raises(InvalidArgument):
        VertexFunction(graph=unit_segment, values=[[1.0, 2.0]])


def test_vertex_function_access(star):
    f = VertexFunction.from_mapping(star, {"Q": 2.0})
    assert f["Q"] == 2.0
    assert f["P"] == 0.0
    assert len(f) == 4
    assert f.as_dict() == {"P": 0.0, "Q": 2.0, "R": 0.0, "S": 0.0}


def test_solve_grounded_segment(unit_segment):
    values = solve_grounded(unit_segment, {"B": 1.0, "A": -1.0}, "A")
    np.testing.assert_allclose(values.values, [0.0, 1.0], atol=1e-12)


def test_solve_grounded_zero_measure(star):
    values = solve_grounded(star, GraphMeasure.zero(star), "Q")
    np.testing.assert_array_equal(values.values, 0.0)


def test_solve_grounded_k4(k4):
    values = solve_grounded(k4, {"v1": 1.0, "v0": -1.0}, "v0")
    assert values["v1"] == pytest.approx(0.5, abs=1e-12)


def test_solve_grounded_needs_zero_mass(star):
    with pytest.raises(MassNotZero):
        solve_grounded(star, {"P": 1.0}, "Q")


def test_solve_grounded_needs_vertex_atoms(unit_segment):
    nu = GraphMeasure.delta(unit_segment, GraphPoint(edge="e1", t=0.5)) - GraphMeasure.delta(
        unit_segment, unit_segment.vertex_point("A")
    )
    with pytest.raises(InvalidPoint):
        solve_grounded(unit_segment, nu, "A")


def test_solve_grounded_kernel(random_graphs, rng):
    for g in random_graphs[:10]:
        c = rng.normal(size=len(g.vertices))
        c -= c.mean()
        masses = dict(zip(g.vertices, c))
        f = solve_grounded(g, masses, g.vertices[0])
        np.testing.assert_allclose(laplacian_matrix(g) @ f, c, atol=1e-9)
        assert f[g.vertices[0]] == 0.0


def test_affine_approximation_of_affine(unit_segment):
    f = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (1.0, 2.0)})
    approx = affine_approximation(f, 4)
    for e in approx.graph.edges:
        assert approx.coefficients[e.id][1] == pytest.approx(2.0)


def test_weak_convergence_rate(unit_segment):
    f = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0.0, 0.0, 1.0)})
    test = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0.0, 0.0, 1.0)})
    errors = weak_convergence_errors(f, test, [8, 16, 32, 64])
    # the error is exactly 1 / (3 N^2) here, so it falls by 4 for every doubling
    for n, err in zip([8, 16, 32, 64], errors):
        assert err == pytest.approx(1.0 / (3.0 * n * n), rel=1e-6)


def test_weak_convergence_linear_test_function(unit_segment):
    f = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0.0, 0.0, 1.0)})
    t = PiecewisePolyFunction(graph=unit_segment, coefficients={"e1": (0.0, 1.0)})
    assert max(weak_convergence_errors(f, t, [8, 16, 32, 64])) < 1e-12


@pytest.mark.parametrize(
    "graph, count",
    [
        pytest.param(complete(4), 16, id="k4"),
        pytest.param(complete(5), 125, id="k5"),
        pytest.param(cycle([1.0] * 5), 5, id="c5"),
    ],
)
def test_spanning_tree_count(graph, count):
    assert spanning_tree_count(graph) == count


def test_spanning_tree_count_of_tree(tree, theta_graph):
    assert spanning_tree_count(tree) == 1
    # ten 3-edge subsets minus the two triangles through e1
    assert spanning_tree_count(theta_graph) == 8


def test_vertex_resistance_matrix_k_n():
    for n in range(2, 9):
        r = vertex_resistance_matrix(complete(n))
        off = r[~np.eye(n, dtype=bool)]
        np.testing.assert_allclose(off, 2.0 / n, atol=1e-12)
