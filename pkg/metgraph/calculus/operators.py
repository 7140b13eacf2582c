"""
Differential calculus on a metrized graph: directional derivatives, the
measure-valued Laplacian, integration against measures and the Dirichlet
inner product.
"""

import math
from typing import List, Tuple

from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field

from ..config import DEFAULT_TOLERANCES
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import ConstantFunction, HostMismatch, InvalidDirection, NotAffine
from .measure import Atom, GraphMeasure
from .piecewise_poly import PiecewisePolyFunction


class Direction(BaseModel):
    """
    A direction leaving a point along an edge.

    ``forward`` is True when the direction points toward increasing arclength,
    i.e. into the edge from its first endpoint.
    """

    model_config = ConfigDict(frozen=True)

    edge: str = Field(description="Edge the direction runs along")
    forward: bool = Field(description="True if pointing toward increasing arclength")


def incident_directions(g: WeightedGraph, p: GraphPoint) -> List[Direction]:
    """
    All directions leaving ``p``; there are n_p of them.

    Parameters
    ----------
    g : WeightedGraph
    p : GraphPoint

    Returns
    -------
    list[Direction]
        One per incident edge end at a vertex, two at an interior point.
    """
    point = g.canonical_point(p.edge, p.t)
    vertex = g.point_vertex(point)
    if vertex is None:
        return [Direction(edge=point.edge, forward=True), Direction(edge=point.edge, forward=False)]
    return [Direction(edge=edge.id, forward=is_start) for edge, is_start in g.incidence[vertex]]


def _offset_along(g: WeightedGraph, p: GraphPoint, direction: Direction) -> float:
    """Arclength on ``direction.edge`` at which ``p`` sits."""
    point = g.canonical_point(p.edge, p.t)
    vertex = g.point_vertex(point)
    if vertex is None:
        if direction.edge != point.edge:
            raise InvalidDirection(
                f"edge {direction.edge!r} does not pass through interior point {point}"
            )
        return point.t
    edge = g[direction.edge]
    if direction.forward and edge.u == vertex:
        return 0.0
    if not direction.forward and edge.v == vertex:
        return edge.length
    raise InvalidDirection(
        f"direction along {direction.edge!r} (forward={direction.forward}) does not leave vertex {vertex!r}"
    )


def directional_derivative(
    f: PiecewisePolyFunction, p: GraphPoint, direction: Direction
) -> float:
    """
    One-sided derivative of ``f`` at ``p`` in ``direction``.

    Parameters
    ----------
    f : PiecewisePolyFunction
    p : GraphPoint
    direction : Direction
        Must leave ``p``

    Returns
    -------
    float
        ``f_e'(t)`` when pointing toward increasing arclength, ``-f_e'(t)``
        otherwise.

    Examples
    --------
    At the end ``t = 1`` of ``f_RQ(t) = t^2 + 1/2`` the inward direction gives
    ``-f_RQ'(1) = -2``.
    """
    t = _offset_along(f.graph, p, direction)
    slope = float(f.polynomial(direction.edge).deriv()(t))
    return slope if direction.forward else -slope


def sigma(f: PiecewisePolyFunction, p: GraphPoint) -> float:
    """Sum of the directional derivatives of ``f`` over all directions leaving ``p``."""
    return math.fsum(
        directional_derivative(f, p, d) for d in incident_directions(f.graph, p)
    )


def laplacian(f: PiecewisePolyFunction) -> GraphMeasure:
    """
    The measure-valued Laplacian of a piecewise polynomial function.

    Parameters
    ----------
    f : PiecewisePolyFunction

    Returns
    -------
    GraphMeasure
        Density ``-f_e''`` on each edge and an atom of mass ``-sigma_p(f)`` at
        each vertex; zero atoms are dropped.
    """
    g = f.graph
    atoms = [
        Atom(point=g.vertex_point(v), mass=-sigma(f, g.vertex_point(v)))
        for v in g.vertices
        if g.incidence[v]
    ]
    densities = {e.id: tuple(-f.polynomial(e.id).deriv(2).coef) for e in g.edges}
    return GraphMeasure(graph=g, atoms=atoms, densities=densities)


def integrate(f: PiecewisePolyFunction, mu: GraphMeasure) -> float:
    """
    Integral of ``f`` against ``mu``, exact for polynomials.

    Parameters
    ----------
    f : PiecewisePolyFunction
    mu : GraphMeasure
        Measure on the same model as ``f``

    Returns
    -------
    float

    Examples
    --------
    >>> g = segment()
    >>> t = PiecewisePolyFunction(graph=g, coefficients={"e1": (0.0, 1.0)})
    >>> integrate(t, GraphMeasure.lebesgue(g))
    0.5
    """
    if f.graph is not mu.graph and f.graph != mu.graph:
        raise HostMismatch("function and measure live on different models")
    terms: List[float] = [atom.mass * f(atom.point) for atom in mu.atoms]
    for eid in mu.densities:
        terms.append(_edge_integral(f.polynomial(eid) * mu.density(eid), f.graph[eid].length))
    return math.fsum(terms)


def dirichlet_inner(f: PiecewisePolyFunction, g: PiecewisePolyFunction) -> float:
    """Sum over edges of the exact integral of ``f_e' g_e'``."""
    if f.graph is not g.graph and f.graph != g.graph:
        raise HostMismatch("functions live on different models")
    return math.fsum(
        _edge_integral(f.polynomial(e.id).deriv() * g.polynomial(e.id).deriv(), e.length)
        for e in f.graph.edges
    )


def _edge_integral(poly: Polynomial, length: float) -> float:
    antiderivative = poly.integ()
    return float(antiderivative(length) - antiderivative(0.0))


def maximum_vertex(f: PiecewisePolyFunction) -> Tuple[str, float]:
    """
    Locate a maximum of a nonconstant piecewise affine function.

    Parameters
    ----------
    f : PiecewisePolyFunction
        Degree at most 1 on every edge

    Returns
    -------
    tuple[str, float]
        A vertex where ``f`` attains its maximum and ``sigma_p(f)`` there,
        which is negative.

    Raises
    ------
    NotAffine
        If some edge polynomial has degree 2 or more.
    ConstantFunction
        If ``f`` is constant.
    """
    if not f.is_affine:
        raise NotAffine(f"function has degree {f.degree}; the maximum principle needs degree 1")
    g = f.graph
    values = {v: f.vertex_value(v) for v in g.vertices if g.incidence[v]}
    top, bottom = max(values.values()), min(values.values())
    tol = DEFAULT_TOLERANCES.continuity
    if top - bottom <= tol:
        raise ConstantFunction("function is constant; it has no strict maximum vertex")

    # the set where f = max is connected; its boundary vertices have sigma < 0
    candidates = [
        (v, sigma(f, g.vertex_point(v))) for v, value in values.items() if top - value <= tol
    ]
    for vertex, s in candidates:
        if s < 0:
            return vertex, s
    return min(candidates, key=lambda pair: pair[1])
