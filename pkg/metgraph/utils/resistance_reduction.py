"""
Effective resistance without linear algebra: series/parallel reduction, the
edge-deleted resistance R_e and the closed form along a single edge.
"""

import logging
import math
from typing import Any, Dict, List, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_TOLERANCES
from ..core.queries import is_bridge
from ..core.refinement import delete_edge, refine_at
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import InvalidArgument, NotAnEndpoint, NotSeriesParallel, OffsetOutOfRange
from .potential import effective_resistance

logger = logging.getLogger(__name__)

INFINITY = math.inf


def conductance_through(length: float, resistance: float) -> float:
    """``1 / (length + resistance)``, exactly 0 when ``resistance`` is infinite."""
    if math.isinf(resistance):
        return 0.0
    return 1.0 / (length + resistance)


class TwoTerminalNetwork(BaseModel):
    """A model with two distinct terminals."""

    model_config = ConfigDict(frozen=True)

    graph: WeightedGraph = Field(description="Network")
    x: GraphPoint = Field(description="First terminal")
    y: GraphPoint = Field(description="Second terminal")

    @model_validator(mode="after")
    def _check_terminals(self) -> "TwoTerminalNetwork":
        if self.graph.same_point(self.x, self.y):
            raise InvalidArgument(f"terminals must be distinct, both are {self.x}")
        return self


def edge_deleted_resistance(g: WeightedGraph, edge_id: str) -> float:
    """
    ``R_e``: resistance between the endpoints of ``edge_id`` once its interior is removed.

    Parameters
    ----------
    g : WeightedGraph
    edge_id : str

    Returns
    -------
    float
        ``math.inf`` if the edge is a bridge.
    """
    edge = g[edge_id]
    if is_bridge(g, edge_id):
        return INFINITY
    rest = delete_edge(g, edge_id)
    return effective_resistance(rest, rest.vertex_point(edge.u), rest.vertex_point(edge.v))


def resistance_on_segment(
    g: WeightedGraph,
    edge_id: str,
    t: float,
    toward: str,
    deleted_resistance: float | None = None,
) -> float:
    """
    ``r(x, y)`` for ``x`` on an edge and ``y`` one of its endpoints.

    Parameters
    ----------
    g : WeightedGraph
    edge_id : str
    t : float
        Arclength distance from ``toward`` to ``x`` along the edge
    toward : str
        The endpoint ``y``
    deleted_resistance : float | None, optional
        ``R_e`` if already known. Default computes it.

    Returns
    -------
    float
        ``t - t^2 / (L_e + R_e)``; just ``t`` for a bridge.

    Examples
    --------
    On a circle of length 1 made of three edges, ``R_e = 2/3`` and the
    result is ``t - t^2``.
    """
    edge = g[edge_id]
    if toward not in (edge.u, edge.v):
        raise NotAnEndpoint(f"vertex {toward!r} is not an endpoint of edge {edge_id!r}")
    tol = DEFAULT_TOLERANCES.point
    if not (-tol <= t <= edge.length + tol):
        raise OffsetOutOfRange(f"offset {t!r} outside [0, {edge.length!r}] on edge {edge_id!r}")
    t = min(max(t, 0.0), edge.length)
    r_e = edge_deleted_resistance(g, edge_id) if deleted_resistance is None else deleted_resistance
    return t - t * t * conductance_through(edge.length, r_e)


def endpoint_resistance(g: WeightedGraph, edge_id: str) -> float:
    """``r(e) = L_e R_e / (L_e + R_e)``, or ``L_e`` for a bridge."""
    length = g[edge_id].length
    return resistance_on_segment(g, edge_id, length, g[edge_id].u)


def _reduce(graph: nx.MultiGraph, terminals: Tuple[str, str]) -> bool:
    """One pass of parallel merges, then series eliminations, then dead-end pruning."""
    changed = False

    groups: Dict[frozenset, List[Tuple[str, str, Any]]] = {}
    for u, v, key in graph.edges(keys=True):
        groups.setdefault(frozenset((u, v)), []).append((u, v, key))
    for bundle in groups.values():
        if len(bundle) < 2:
            continue
        conductance = math.fsum(1.0 / graph.edges[e]["r"] for e in bundle)
        u, v, _ = bundle[0]
        graph.remove_edges_from(bundle)
        graph.add_edge(u, v, r=1.0 / conductance)
        changed = True

    for node in list(graph.nodes):
        if node in terminals or graph.degree(node) != 2:
            continue
        (_, a, ka), (_, b, kb) = list(graph.edges(node, keys=True))
        if a == b:
            continue
        r = graph.edges[node, a, ka]["r"] + graph.edges[node, b, kb]["r"]
        graph.remove_node(node)
        graph.add_edge(a, b, r=r)
        changed = True

    # a dead end carries no current
    for node in list(graph.nodes):
        if node not in terminals and graph.degree(node) <= 1:
            graph.remove_node(node)
            changed = True
    return changed


def series_parallel_resistance(net: TwoTerminalNetwork) -> float:
    """
    Terminal resistance by repeated parallel merges and series eliminations.

    Parameters
    ----------
    net : TwoTerminalNetwork

    Returns
    -------
    float

    Raises
    ------
    NotSeriesParallel
        If the rules stop before a single edge joins the terminals; fall back
        to :func:`~metgraph.utils.potential.effective_resistance`.

    Examples
    --------
    A path with edges of length 1, 2 and 3 reduces to 6.
    """
    g, remap = refine_at(net.graph, [net.x, net.y])
    a = g.point_vertex(remap(net.x))
    b = g.point_vertex(remap(net.y))
    terminals = (a, b)

    graph = nx.MultiGraph()
    graph.add_nodes_from(g.vertices)
    for e in g.edges:
        graph.add_edge(e.u, e.v, r=e.length)

    rounds = 0
    while _reduce(graph, terminals):  # type: ignore[arg-type]
        rounds += 1
    logger.debug("series-parallel reduction finished after %d rounds", rounds)

    if set(graph.nodes) == {a, b} and graph.number_of_edges() == 1:
        (_, _, data), = graph.edges(data=True)
        return float(data["r"])
    raise NotSeriesParallel(
        f"network between {net.x} and {net.y} is not series-parallel; "
        f"{graph.number_of_nodes()} vertices and {graph.number_of_edges()} edges remain"
    )
