"""
Potentials of unit and general current injections: the j-function,
effective resistance and edge currents.

Queries at interior points refine the model first so that every point of
interest is a vertex, then solve a grounded Kirchhoff system there.
"""

import logging
import math
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from ..calculus.measure import Atom, GraphMeasure, measures_close
from ..calculus.operators import dirichlet_inner, laplacian
from ..calculus.piecewise_poly import PiecewisePolyFunction
from ..config import DEFAULT_TOLERANCES
from ..core.refinement import PointRemap, refine_at
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import (
    ContinuousMeasureUnsupported,
    InvalidArgument,
    LaplacianCheckFailed,
    MassNotZero,
    SourceEqualsSink,
    UnknownEdge,
)
from .kirchhoff import VertexFunction, interpolate_affine, solve_grounded

logger = logging.getLogger(__name__)


def _solve_refined(
    g: WeightedGraph,
    masses: Sequence[Tuple[GraphPoint, float]],
    ground: GraphPoint,
    extra: Sequence[GraphPoint] = (),
) -> Tuple[WeightedGraph, PointRemap, VertexFunction]:
    points = [p for p, _ in masses] + [ground, *extra]
    refined, remap = refine_at(g, points)
    table: Dict[str, float] = {}
    for p, mass in masses:
        vertex = refined.point_vertex(remap(p))
        table[vertex] = table.get(vertex, 0.0) + mass  # type: ignore[index]
    ground_vertex = refined.point_vertex(remap(ground))
    values = solve_grounded(refined, table, ground_vertex)  # type: ignore[arg-type]
    return refined, remap, values


def j_function(g: WeightedGraph, y: GraphPoint, z: GraphPoint) -> PiecewisePolyFunction:
    """
    The j-function ``x -> j_z(x, y)``.

    Parameters
    ----------
    g : WeightedGraph
    y : GraphPoint
        Where unit current enters
    z : GraphPoint
        Where it leaves; the potential is grounded here

    Returns
    -------
    PiecewisePolyFunction
        Piecewise affine, on ``g`` refined at ``y`` and ``z`` (see
        :func:`~metgraph.core.refinement.refine_at`). Its Laplacian is
        ``delta_y - delta_z`` and it vanishes at ``z``.

    Examples
    --------
    On the unit segment grounded at ``t = 0``, ``j_0(x, y) = min(x, y)``.
    """
    if g.same_point(y, z):
        refined, _ = refine_at(g, [y, z])
        return PiecewisePolyFunction.zero(refined)
    refined, _, values = _solve_refined(g, [(y, 1.0), (z, -1.0)], z)
    return interpolate_affine(refined, values)


def j_value(g: WeightedGraph, x: GraphPoint, y: GraphPoint, z: GraphPoint) -> float:
    """``j_z(x, y)`` at a single point, solving on ``g`` refined at ``x``, ``y`` and ``z``."""
    if g.same_point(y, z):
        return 0.0
    refined, remap, values = _solve_refined(g, [(y, 1.0), (z, -1.0)], z, extra=[x])
    return values[refined.point_vertex(remap(x))]  # type: ignore[index]


def effective_resistance(g: WeightedGraph, x: GraphPoint, y: GraphPoint) -> float:
    """
    Effective resistance ``r(x, y) = j_y(x, x)``.

    Parameters
    ----------
    g : WeightedGraph
    x, y : GraphPoint

    Returns
    -------
    float
        0 when ``x`` and ``y`` are the same point, without solving.
    """
    if g.same_point(x, y):
        return 0.0
    return j_value(g, x, x, y)


class PotentialSolution(BaseModel):
    """
    Potential of a current ``I`` injected at ``source`` and extracted at
    ``sink``, grounded at ``ground``.

    ``phi`` lives on ``graph``, the original model refined at the three
    points; ``remap`` translates points of the original model onto it.
    """

    model_config = ConfigDict(frozen=True)

    graph: WeightedGraph = Field(description="Refined model carrying the potential")
    remap: PointRemap = Field(description="Map from the original model to the refined one")
    phi: PiecewisePolyFunction = Field(description="Piecewise affine potential")
    source: GraphPoint = Field(description="Injection point a (original model)")
    sink: GraphPoint = Field(description="Extraction point b (original model)")
    ground: GraphPoint = Field(description="Point where phi = 0 (original model)")
    current: float = Field(description="Injected current I")

    def potential(self, x: GraphPoint) -> float:
        """``phi`` at a point of the original model."""
        return self.phi(self.remap(x))

    @property
    def source_point(self) -> GraphPoint:
        return self.remap(self.source)

    @property
    def sink_point(self) -> GraphPoint:
        return self.remap(self.sink)


def solve_current(
    g: WeightedGraph,
    a: GraphPoint,
    b: GraphPoint,
    current: float,
    ground: GraphPoint,
) -> PotentialSolution:
    """
    Potential of a current flowing from ``a`` to ``b``.

    Parameters
    ----------
    g : WeightedGraph
    a : GraphPoint
        Source
    b : GraphPoint
        Sink
    current : float
        Injected current, positive
    ground : GraphPoint
        Point where the potential is 0

    Returns
    -------
    PotentialSolution

    Raises
    ------
    SourceEqualsSink
        If ``a`` and ``b`` are the same point.
    LaplacianCheckFailed
        If the Laplacian of the result is not ``I delta_a - I delta_b``.
    """
    if g.same_point(a, b):
        raise SourceEqualsSink(f"source and sink are the same point {a}")
    if not (current > 0 and math.isfinite(current)):
        raise InvalidArgument(f"current must be positive, got {current!r}")

    refined, remap, values = _solve_refined(g, [(a, current), (b, -current)], ground)
    phi = interpolate_affine(refined, values)

    expected = GraphMeasure(
        graph=refined,
        atoms=[Atom(point=remap(a), mass=current), Atom(point=remap(b), mass=-current)],
    )
    tol = DEFAULT_TOLERANCES.measure * max(1.0, current)
    if not measures_close(laplacian(phi), expected, tol):
        raise LaplacianCheckFailed(
            f"Laplacian of the potential does not match I*delta_{a} - I*delta_{b}"
        )
    logger.debug("current %.6g from %s to %s on %d edges", current, a, b, len(refined.edges))
    return PotentialSolution(
        graph=refined,
        remap=remap,
        phi=phi,
        source=a,
        sink=b,
        ground=ground,
        current=current,
    )


def current_on_edge(sol: PotentialSolution, edge_id: str) -> float:
    """
    Current along an edge of the refined model, ``-phi_e'``.

    Positive values flow in the direction of increasing arclength.
    """
    if edge_id not in sol.graph.edge_index:
        raise UnknownEdge(f"edge {edge_id!r} is not an edge of the refined model")
    return -float(sol.phi.polynomial(edge_id).deriv()(0.0))


def edge_currents(sol: PotentialSolution) -> Dict[str, float]:
    """Current on every edge of the refined model, in edge order."""
    return {e.id: current_on_edge(sol, e.id) for e in sol.graph.edges}


def dissipated_energy(sol: PotentialSolution) -> float:
    """
    ``int phi'^2 dx``, the power dissipated by the flow.

    Equals ``I * (phi(a) - phi(b)) = I^2 * r(a, b)``.
    """
    return dirichlet_inner(sol.phi, sol.phi)


def solve_measure_poisson(
    g: WeightedGraph, nu: GraphMeasure, z: GraphPoint
) -> PiecewisePolyFunction:
    """
    Solve ``Laplacian f = nu`` with ``f(z) = 0`` for a discrete measure of total mass 0.

    Parameters
    ----------
    g : WeightedGraph
    nu : GraphMeasure
        Point masses on ``g`` summing to zero
    z : GraphPoint
        Ground point

    Returns
    -------
    PiecewisePolyFunction
        Piecewise affine, on ``g`` refined at the atoms of ``nu`` and at ``z``;
        equal to ``sum_i c_i j_z(x, p_i)``.

    Raises
    ------
    ContinuousMeasureUnsupported
        If ``nu`` has a density.
    MassNotZero
        If ``nu`` does not have total mass 0.
    """
    if not nu.is_discrete():
        raise ContinuousMeasureUnsupported(
            "only discrete measures are supported; the measure has a density"
        )
    total = math.fsum(a.mass for a in nu.atoms)
    if abs(total) > DEFAULT_TOLERANCES.mass:
        raise MassNotZero(f"measure has total mass {total!r}, expected 0")
    masses: List[Tuple[GraphPoint, float]] = [(a.point, a.mass) for a in nu.atoms]
    refined, _, values = _solve_refined(g, masses, z)
    return interpolate_affine(refined, values)
