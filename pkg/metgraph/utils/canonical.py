"""
The canonical measure and the resistance identities it encodes.
"""

import logging
import math
from typing import Dict, Iterable, Optional, Tuple

from tqdm import tqdm

from ..calculus.measure import Atom, GraphMeasure
from ..calculus.operators import integrate, laplacian
from ..calculus.piecewise_poly import PiecewisePolyFunction
from ..core.refinement import subdivide_at
from ..core.weighted_graph import Edge, GraphPoint, WeightedGraph
from .potential import effective_resistance
from .resistance_reduction import conductance_through, edge_deleted_resistance

logger = logging.getLogger(__name__)


def _edges(g: WeightedGraph, desc: str, verbose: int) -> Iterable[Edge]:
    if verbose >= 2:
        return tqdm(g.edges, desc=desc, unit=" edges")
    return g.edges


def deleted_resistances(g: WeightedGraph, verbose: int = 0) -> Dict[str, float]:
    """``R_e`` for every edge, in edge order."""
    return {
        e.id: edge_deleted_resistance(g, e.id)
        for e in _edges(g, "Edge-deleted resistances", verbose)
    }


def canonical_measure(g: WeightedGraph, verbose: int = 0) -> GraphMeasure:
    """
    The canonical measure.

    Parameters
    ----------
    g : WeightedGraph
    verbose : int, optional
        0 silent, 2 shows a progress bar over edges. Default is 0.

    Returns
    -------
    GraphMeasure
        Atom ``1 - n_p/2`` at every vertex (absent for valence 2) and constant
        density ``1 / (R_e + L_e)`` on every edge (absent for bridges).

    Examples
    --------
    On a circle every vertex has valence 2 and no edge is a bridge, so the
    canonical measure is ``dx`` scaled by ``1 / total length``.
    """
    r_deleted = deleted_resistances(g, verbose)
    atoms = [
        Atom(point=g.vertex_point(v), mass=1.0 - g.valence(v) / 2.0)
        for v in g.vertices
        if g.incidence[v]
    ]
    densities = {
        e.id: (conductance_through(e.length, r_deleted[e.id]),) for e in g.edges
    }
    return GraphMeasure(graph=g, atoms=atoms, densities=densities)


def foster_sum(g: WeightedGraph, verbose: int = 0) -> float:
    """
    ``sum_e r(e) / L_e`` with ``r(e)`` the resistance between the endpoints of ``e``.

    Equals ``#V - 1`` on every connected model.
    """
    terms = []
    for e in _edges(g, "Foster terms", verbose):
        r = effective_resistance(g, g.vertex_point(e.u), g.vertex_point(e.v))
        terms.append(r / e.length)
    total = math.fsum(terms)
    if verbose >= 1:
        print(f"Foster sum {total:.12g} over {len(g.edges)} edges, #V - 1 = {len(g.vertices) - 1}")
    return total


def cycle_rank_sum(g: WeightedGraph, verbose: int = 0) -> float:
    """
    ``sum_e L_e / (R_e + L_e)``, zero for bridges.

    Equals ``#E - #V + 1`` on every connected model.
    """
    r_deleted = deleted_resistances(g, verbose)
    total = math.fsum(
        e.length * conductance_through(e.length, r_deleted[e.id]) for e in g.edges
    )
    if verbose >= 1:
        print(f"Cycle-rank sum {total:.12g}, #E - #V + 1 = {len(g.edges) - len(g.vertices) + 1}")
    return total


def resistance_function(
    g: WeightedGraph, y: GraphPoint, verbose: int = 0
) -> PiecewisePolyFunction:
    """
    ``x -> r(x, y)`` as a piecewise quadratic function.

    On each edge of ``g`` refined at ``y`` the function is the quadratic
    through the exact resistances at both endpoints and at the midpoint.

    Parameters
    ----------
    g : WeightedGraph
    y : GraphPoint
    verbose : int, optional
        0 silent, 2 shows a progress bar over edges. Default is 0.

    Returns
    -------
    PiecewisePolyFunction
        On ``g`` refined at ``y`` (see :func:`~metgraph.core.refinement.subdivide_at`).
    """
    h, remap = subdivide_at(g, y)
    y_fine = remap(y)
    at_vertex: Dict[str, float] = {
        v: effective_resistance(h, h.vertex_point(v), y_fine) for v in h.vertices
    }
    coefficients: Dict[str, Tuple[float, ...]] = {}
    for e in _edges(h, "Resistance fits", verbose):
        r0, r1 = at_vertex[e.u], at_vertex[e.v]
        rm = effective_resistance(h, GraphPoint(edge=e.id, t=e.length / 2), y_fine)
        c2 = 2.0 * (r0 - 2.0 * rm + r1) / (e.length * e.length)
        c1 = (r1 - r0) / e.length - c2 * e.length
        coefficients[e.id] = (r0, c1, c2)
    logger.debug("resistance function to %s fitted on %d edges", y, len(h.edges))
    return PiecewisePolyFunction(graph=h, coefficients=coefficients)


def resistance_measure(g: WeightedGraph, y: GraphPoint) -> GraphMeasure:
    """
    ``(1/2) Laplacian_x r(x, y) + delta_y`` on ``g`` refined at ``y``.

    The result does not depend on ``y`` and equals the canonical measure.
    """
    _, remap = subdivide_at(g, y)
    r = resistance_function(g, y)
    return 0.5 * laplacian(r) + GraphMeasure.delta(r.graph, remap(y))


def tau(g: WeightedGraph, y: Optional[GraphPoint] = None) -> float:
    """
    ``tau = (1/2) int r(x, y) d mu_can(x)``, the same for every ``y``.

    Parameters
    ----------
    g : WeightedGraph
    y : GraphPoint, optional
        Base point. Default is the first vertex.

    Returns
    -------
    float
        Raw value; no normalization by total length is applied.

    Examples
    --------
    The unit segment has ``tau = 1/4`` and the circle of length 1 has
    ``tau = 1/12``.
    """
    if y is None:
        y = g.vertex_point(g.vertices[0])
    r = resistance_function(g, y)
    _, remap = subdivide_at(g, y)
    mu = canonical_measure(g).refine(remap)
    return 0.5 * integrate(r, mu)
