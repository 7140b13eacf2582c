from typing import List

import networkx as nx

from ..config import DEFAULT_TOLERANCES
from ..errors import InvalidPoint
from .refinement import refine_at
from .weighted_graph import GraphPoint, WeightedGraph


def path_distance(g: WeightedGraph, x: GraphPoint, y: GraphPoint) -> float:
    """
    Length of a shortest path between two points.

    Both points are made vertices first, then Dijkstra runs on the refined
    model with edge lengths as weights.

    Parameters
    ----------
    g : WeightedGraph
    x, y : GraphPoint
        Points on ``g``

    Returns
    -------
    float

    Examples
    --------
    >>> g = build_graph(["A", "B"], [("e1", "A", "B", 1.0)])
    >>> path_distance(g, GraphPoint(edge="e1", t=0.2), GraphPoint(edge="e1", t=0.9))
    0.7
    """
    if g.same_point(x, y):
        return 0.0
    refined, remap = refine_at(g, [x, y])
    a = refined.point_vertex(remap(x))
    b = refined.point_vertex(remap(y))
    return float(
        nx.dijkstra_path_length(refined.to_networkx(), a, b, weight="length")
    )


def bridges(g: WeightedGraph) -> List[str]:
    """Ids of edges whose interior disconnects the graph, in edge order."""
    graph = g.to_networkx()
    found = {graph.edges[u, v]["id"] for u, v in nx.bridges(graph)}
    return [e.id for e in g.edges if e.id in found]


def is_bridge(g: WeightedGraph, edge_id: str) -> bool:
    """True iff deleting the open interior of ``edge_id`` disconnects the graph."""
    g[edge_id]  # raises UnknownEdge
    return edge_id in bridges(g)


def cycle_rank(g: WeightedGraph) -> int:
    """Dimension of the cycle space, #E - #V + 1."""
    return len(g.edges) - len(g.vertices) + 1


def parse_point(g: WeightedGraph, text: str) -> GraphPoint:
    """
    Resolve ``<vertex>`` or ``<edge>:<t>`` to a canonical point.

    Parameters
    ----------
    g : WeightedGraph
    text : str
        Vertex name, or edge id and arclength offset from its first endpoint

    Returns
    -------
    GraphPoint

    Raises
    ------
    InvalidPoint
        If the offset is not a number.
    UnknownVertex, UnknownEdge, OffsetOutOfRange
        If the text names something that is not on ``g``.
    """
    text = text.strip()
    if ":" not in text:
        return g.vertex_point(text)
    edge_id, _, raw = text.partition(":")
    try:
        t = float(raw)
    except ValueError:
        raise InvalidPoint(f"point {text!r}: offset {raw!r} is not a number")
    return g.canonical_point(edge_id, t, DEFAULT_TOLERANCES.point)


def format_point(g: WeightedGraph, p: GraphPoint) -> str:
    """Inverse of :func:`parse_point`: vertex name for vertices, ``edge:t`` otherwise."""
    vertex = g.point_vertex(p)
    return vertex if vertex is not None else str(p)
