import math
import re
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_TOLERANCES
from ..constants import NAME_PATTERN
from ..errors import (
    Disconnected,
    DuplicateName,
    InvalidName,
    LoopEdge,
    MultiEdge,
    NoEdges,
    NonpositiveLength,
    NoVertices,
    OffsetOutOfRange,
    UnknownEdge,
    UnknownVertex,
)

_NAME_RE = re.compile(rf"^{NAME_PATTERN}$")

EdgeDescriptor = Tuple[str, str, str, float]


class Edge(BaseModel):
    """A segment of the model: id, oriented endpoints and arclength."""

    model_config = ConfigDict(frozen=True)

    id: str = Field(description="Edge identifier")
    u: str = Field(description="First endpoint; arclength t = 0 here")
    v: str = Field(description="Second endpoint; arclength t = length here")
    length: float = Field(description="Arclength L_e of the segment")

    @property
    def weight(self) -> float:
        """Conductance w_e = 1 / L_e."""
        return 1.0 / self.length

    def other(self, vertex: str) -> str:
        """Return the endpoint opposite ``vertex``."""
        return self.v if vertex == self.u else self.u


class GraphPoint(BaseModel):
    """A location on a metrized graph: an edge id plus an arclength offset from its first endpoint."""

    model_config = ConfigDict(frozen=True)

    edge: str = Field(description="Edge identifier")
    t: float = Field(description="Arclength offset from the edge's first endpoint")

    def __str__(self) -> str:
        return f"{self.edge}:{self.t:.12g}"


class WeightedGraph(BaseModel):
    """
    A weighted-graph model of a metrized graph.

    Vertices are kept in declaration order, edges likewise; the order fixes
    matrix indices and edge orientations. The model is validated on
    construction: no loops, no multiple edges, positive lengths, unique names
    and a connected underlying graph.

    Examples
    --------
    >>> g = build_graph(["A", "B"], [("e1", "A", "B", 1.0)])
    >>> g["e1"].length
    1.0
    >>> "A" in g
    True
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[str, ...] = Field(description="Vertex names in declaration order")
    edges: Tuple[Edge, ...] = Field(description="Edges in declaration order")

    @model_validator(mode="after")
    def _check_model(self) -> "WeightedGraph":
        if not self.vertices:
            raise NoVertices("graph has no vertices")
        seen: set[str] = set()
        for name in self.vertices:
            if not _NAME_RE.match(name):
                raise InvalidName(f"invalid vertex name {name!r}")
            if name in seen:
                raise DuplicateName(f"vertex {name!r} declared twice")
            seen.add(name)
        if not self.edges:
            raise NoEdges(f"graph has no edges; vertex {self.vertices[0]!r} spans nothing")

        edge_ids: set[str] = set()
        pairs: Dict[frozenset, str] = {}
        for e in self.edges:
            if not _NAME_RE.match(e.id):
                raise InvalidName(f"invalid edge id {e.id!r}")
            if e.id in edge_ids:
                raise DuplicateName(f"edge {e.id!r} declared twice")
            edge_ids.add(e.id)
            for end in (e.u, e.v):
                if end not in seen:
                    raise UnknownVertex(f"edge {e.id!r} uses unknown vertex {end!r}")
            if e.u == e.v:
                raise LoopEdge(f"edge {e.id!r} is a loop at vertex {e.u!r}")
            if not (math.isfinite(e.length) and e.length > 0):
                raise NonpositiveLength(
                    f"edge {e.id!r} has nonpositive length {e.length!r}"
                )
            key = frozenset((e.u, e.v))
            if key in pairs:
                raise MultiEdge(
                    f"edge {e.id!r} duplicates edge {pairs[key]!r} between {e.u!r} and {e.v!r}"
                )
            pairs[key] = e.id

        if not nx.is_connected(self.to_networkx()):
            parts = sorted(
                (sorted(c) for c in nx.connected_components(self.to_networkx())),
                key=lambda c: self.vertex_index[c[0]],
            )
            raise Disconnected(
                f"graph has {len(parts)} components; vertex {parts[1][0]!r} is unreachable from {parts[0][0]!r}"
            )
        return self

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    @cached_property
    def vertex_index(self) -> Dict[str, int]:
        """Vertex name -> position in ``vertices``."""
        return {name: i for i, name in enumerate(self.vertices)}

    @cached_property
    def edge_index(self) -> Dict[str, int]:
        """Edge id -> position in ``edges``."""
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def incidence(self) -> Dict[str, List[Tuple[Edge, bool]]]:
        """Vertex name -> list of (edge, vertex is the edge's first endpoint)."""
        table: Dict[str, List[Tuple[Edge, bool]]] = {v: [] for v in self.vertices}
        for e in self.edges:
            table[e.u].append((e, True))
            table[e.v].append((e, False))
        return table

    def __getitem__(self, edge_id: str) -> Edge:
        """
        Dictionary-like access to an edge by id.

        Parameters
        ----------
        edge_id : str

        Returns
        -------
        Edge
        """
        if edge_id not in self.edge_index:
            raise UnknownEdge(f"Cannot find edge: {edge_id}")
        return self.edges[self.edge_index[edge_id]]

    def __contains__(self, name: str) -> bool:
        """Check whether ``name`` is a vertex name or an edge id."""
        return name in self.vertex_index or name in self.edge_index

    def require_vertex(self, name: str) -> str:
        if name not in self.vertex_index:
            raise UnknownVertex(f"Cannot find vertex: {name}")
        return name

    @property
    def total_length(self) -> float:
        return math.fsum(e.length for e in self.edges)

    def valence(self, vertex: str) -> int:
        return len(self.incidence[self.require_vertex(vertex)])

    def to_networkx(self) -> nx.Graph:
        """Underlying combinatorial graph with ``length`` and ``weight`` edge attributes."""
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        for e in self.edges:
            graph.add_edge(e.u, e.v, id=e.id, length=e.length, weight=e.weight)
        return graph

    # ------------------------------------------------------------------
    # Points
    # ------------------------------------------------------------------

    def vertex_point(self, vertex: str) -> GraphPoint:
        """
        Canonical point of a vertex.

        The representative is the lexicographically smallest incident
        (edge id, endpoint) pair, with the first endpoint ordered before the
        second.
        """
        incident = self.incidence[self.require_vertex(vertex)]
        if not incident:
            # single-vertex graph: no edge can address the vertex
            raise UnknownEdge(f"vertex {vertex!r} has no incident edge")
        edge, is_start = min(incident, key=lambda pair: (pair[0].id, not pair[1]))
        return GraphPoint(edge=edge.id, t=0.0 if is_start else edge.length)

    def canonical_point(
        self,
        edge_id: str,
        t: float,
        tol: float = DEFAULT_TOLERANCES.point,
    ) -> GraphPoint:
        """
        Validate an (edge, offset) pair and return its canonical point.

        Offsets within ``tol`` of an endpoint snap to that vertex's canonical
        representation.

        Parameters
        ----------
        edge_id : str
            Edge identifier
        t : float
            Arclength offset from the edge's first endpoint
        tol : float, optional
            Snapping tolerance. Default is 1e-12.

        Returns
        -------
        GraphPoint
        """
        edge = self[edge_id]
        if not (-tol <= t <= edge.length + tol):
            raise OffsetOutOfRange(
                f"offset {t!r} outside [0, {edge.length!r}] on edge {edge_id!r}"
            )
        if abs(t) <= tol:
            return self.vertex_point(edge.u)
        if abs(t - edge.length) <= tol:
            return self.vertex_point(edge.v)
        return GraphPoint(edge=edge_id, t=float(t))

    def canonicalize(
        self, point: Union[GraphPoint, str], tol: float = DEFAULT_TOLERANCES.point
    ) -> GraphPoint:
        """Canonical form of a point, or of a vertex given by name."""
        if isinstance(point, str):
            return self.vertex_point(point)
        return self.canonical_point(point.edge, point.t, tol)

    def point_vertex(
        self, point: GraphPoint, tol: float = DEFAULT_TOLERANCES.point
    ) -> Optional[str]:
        """Return the vertex name at ``point``, or None for an interior point."""
        edge = self[point.edge]
        if abs(point.t) <= tol:
            return edge.u
        if abs(point.t - edge.length) <= tol:
            return edge.v
        return None

    def point_key(self, point: GraphPoint) -> Tuple[int, float]:
        """Sort key of a canonical point: (edge index, offset)."""
        return (self.edge_index[point.edge], point.t)

    def same_point(
        self,
        p: GraphPoint,
        q: GraphPoint,
        tol: float = DEFAULT_TOLERANCES.point,
    ) -> bool:
        """Structural equality of two points up to ``tol``."""
        a = self.canonicalize(p, tol)
        b = self.canonicalize(q, tol)
        return a.edge == b.edge and abs(a.t - b.t) <= tol


def build_graph(
    vertices: Sequence[str],
    edges: Iterable[EdgeDescriptor],
) -> WeightedGraph:
    """
    Build and validate a weighted graph.

    Parameters
    ----------
    vertices : Sequence[str]
        Vertex names; the order fixes matrix indices
    edges : Iterable[tuple[str, str, str, float]]
        ``(id, u, v, length)`` descriptors; the arclength coordinate runs from ``u``

    Returns
    -------
    WeightedGraph

    Raises
    ------
    LoopEdge, MultiEdge, NonpositiveLength, Disconnected, DuplicateName, NoEdges
        Each message names the offending element.

    Examples
    --------
    >>> star = build_graph(
    ...     ["P", "Q", "R", "S"],
    ...     [("PQ", "P", "Q", 0.5), ("QS", "Q", "S", 0.5), ("RQ", "R", "Q", 1.0)],
    ... )
    >>> star.valence("Q")
    3
    """
    return WeightedGraph(
        vertices=tuple(vertices),
        edges=tuple(
            Edge(id=eid, u=u, v=v, length=float(length)) for eid, u, v, length in edges
        ),
    )


def valence(g: WeightedGraph, vertex: str) -> int:
    """Number of directions leaving ``vertex`` (n_p)."""
    return g.valence(vertex)


def total_length(g: WeightedGraph) -> float:
    """Sum of all edge lengths."""
    return g.total_length


def canonical_point(g: WeightedGraph, edge_id: str, t: float) -> GraphPoint:
    """Canonical point at offset ``t`` along ``edge_id``; see :meth:`WeightedGraph.canonical_point`."""
    return g.canonical_point(edge_id, t)
