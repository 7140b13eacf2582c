"""
Refinements of weighted-graph models.

Every refinement returns the new model together with a :class:`PointRemap`
that translates points, functions and measures from the old model to the new
one. Two models related by refinement describe the same metrized graph, so
total length and path distances are unchanged.
"""

import logging
import math
from functools import cached_property
from typing import Dict, Iterable, List, Tuple

from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field

from ..config import DEFAULT_TOLERANCES
from ..errors import HostMismatch, InvalidArgument, OffsetOutOfRange, UnknownEdge
from .weighted_graph import Edge, GraphPoint, WeightedGraph

logger = logging.getLogger(__name__)


class ArcPiece(BaseModel):
    """
    Isometric correspondence between a sub-interval of a source edge and a
    sub-interval of a target edge.

    ``source_start`` maps to ``target_start`` and ``source_end`` to
    ``target_end``; the slope is +1 or -1.
    """

    model_config = ConfigDict(frozen=True)

    source_edge: str = Field(description="Edge id on the source model")
    source_start: float
    source_end: float
    target_edge: str = Field(description="Edge id on the target model")
    target_start: float
    target_end: float

    @property
    def slope(self) -> float:
        return (self.target_end - self.target_start) / (
            self.source_end - self.source_start
        )

    def forward(self, s: float) -> float:
        return self.target_start + (s - self.source_start) * self.slope

    def backward(self, t: float) -> float:
        return self.source_start + (t - self.target_start) / self.slope

    def source_covers(self, s: float, tol: float) -> bool:
        lo, hi = sorted((self.source_start, self.source_end))
        return lo - tol <= s <= hi + tol

    def flipped(self) -> "ArcPiece":
        return ArcPiece(
            source_edge=self.target_edge,
            source_start=self.target_start,
            source_end=self.target_end,
            target_edge=self.source_edge,
            target_start=self.source_start,
            target_end=self.source_end,
        )


class PointRemap(BaseModel):
    """
    Translation of points from a source model to a target model of the same
    metrized graph.

    Examples
    --------
    >>> g = build_graph(["A", "B"], [("e1", "A", "B", 1.0)])
    >>> fine, remap = subdivide_at(g, GraphPoint(edge="e1", t=0.5))
    >>> remap(GraphPoint(edge="e1", t=0.75))
    GraphPoint(edge='e1_2', t=0.25)
    """

    model_config = ConfigDict(frozen=True)

    source: WeightedGraph = Field(description="Model the points come from")
    target: WeightedGraph = Field(description="Model the points are mapped to")
    pieces: Tuple[ArcPiece, ...] = Field(description="Arc correspondences")

    @classmethod
    def identity(cls, g: WeightedGraph) -> "PointRemap":
        return cls(
            source=g,
            target=g,
            pieces=tuple(
                ArcPiece(
                    source_edge=e.id,
                    source_start=0.0,
                    source_end=e.length,
                    target_edge=e.id,
                    target_start=0.0,
                    target_end=e.length,
                )
                for e in g.edges
            ),
        )

    @cached_property
    def pieces_by_source(self) -> Dict[str, List[ArcPiece]]:
        table: Dict[str, List[ArcPiece]] = {}
        for piece in self.pieces:
            table.setdefault(piece.source_edge, []).append(piece)
        return table

    @cached_property
    def pieces_by_target(self) -> Dict[str, List[ArcPiece]]:
        table: Dict[str, List[ArcPiece]] = {}
        for piece in self.pieces:
            table.setdefault(piece.target_edge, []).append(piece)
        return table

    def _pieces_from(self, edge_id: str) -> List[ArcPiece]:
        return self.pieces_by_source.get(edge_id, [])

    def _pieces_onto(self, edge_id: str) -> List[ArcPiece]:
        return self.pieces_by_target.get(edge_id, [])

    def __call__(
        self, point: GraphPoint, tol: float = DEFAULT_TOLERANCES.point
    ) -> GraphPoint:
        """Map a point of the source model to the canonical point of the target model."""
        self.source[point.edge]  # raises UnknownEdge
        for piece in self._pieces_from(point.edge):
            if piece.source_covers(point.t, tol):
                return self.target.canonical_point(
                    piece.target_edge, piece.forward(point.t), tol
                )
        raise OffsetOutOfRange(
            f"point {point} is not covered by the map to the target model"
        )

    def inverse(self) -> "PointRemap":
        """The map from the target model back to the source model."""
        return PointRemap(
            source=self.target,
            target=self.source,
            pieces=tuple(piece.flipped() for piece in self.pieces),
        )

    def then(self, other: "PointRemap") -> "PointRemap":
        """
        Compose with a map that starts where this one ends.

        Parameters
        ----------
        other : PointRemap
            Map whose source is this map's target

        Returns
        -------
        PointRemap
            Map from this map's source to ``other``'s target
        """
        if other.source != self.target:
            raise HostMismatch("composed maps do not share a model")
        tol = DEFAULT_TOLERANCES.point
        composed: List[ArcPiece] = []
        for first in self.pieces:
            lo_b, hi_b = sorted((first.target_start, first.target_end))
            for second in other._pieces_from(first.target_edge):
                lo_o, hi_o = sorted((second.source_start, second.source_end))
                lo, hi = max(lo_b, lo_o), min(hi_b, hi_o)
                if hi - lo <= tol:
                    continue
                # keep the source interval increasing when the first map was increasing
                a, b = (lo, hi) if first.slope > 0 else (hi, lo)
                composed.append(
                    ArcPiece(
                        source_edge=first.source_edge,
                        source_start=first.backward(a),
                        source_end=first.backward(b),
                        target_edge=second.target_edge,
                        target_start=second.forward(a),
                        target_end=second.forward(b),
                    )
                )
        return PointRemap(source=self.source, target=other.target, pieces=tuple(composed))

    def transport_polynomials(
        self, coefficients: Dict[str, Tuple[float, ...]]
    ) -> Dict[str, Tuple[float, ...]]:
        """
        Re-express per-edge polynomials of the source model on the target model.

        Each target edge must be covered by a single arc of one source edge,
        which holds for refinements and edge reversals.

        Parameters
        ----------
        coefficients : dict[str, tuple[float, ...]]
            Source edge id -> ascending coefficients in the source arclength

        Returns
        -------
        dict[str, tuple[float, ...]]
            Target edge id -> ascending coefficients in the target arclength
        """
        tol = DEFAULT_TOLERANCES.point
        result: Dict[str, Tuple[float, ...]] = {}
        for edge in self.target.edges:
            onto = self._pieces_onto(edge.id)
            if len(onto) != 1 or abs(
                abs(onto[0].target_end - onto[0].target_start) - edge.length
            ) > max(tol, 1e-12 * edge.length):
                raise HostMismatch(
                    f"target edge {edge.id!r} is not the image of a single source arc"
                )
            piece = onto[0]
            source_coef = coefficients.get(piece.source_edge, (0.0,))
            # s(t) = source_start + (t - target_start) / slope
            inv_slope = 1.0 / piece.slope
            s_of_t = Polynomial(
                [piece.source_start - piece.target_start * inv_slope, inv_slope]
            )
            composed = Polynomial(source_coef)(s_of_t)
            result[edge.id] = tuple(float(c) for c in composed.coef)
        return result


# ---------------------------------------------------------------------------
# Refinement builders
# ---------------------------------------------------------------------------


def _fresh(base: str, used: set[str]) -> str:
    name = base
    while name in used:
        name += "_"
    used.add(name)
    return name


def _refine(
    g: WeightedGraph, cuts: Dict[str, List[float]]
) -> Tuple[WeightedGraph, PointRemap]:
    """
    Split edges at interior offsets.

    Pieces replace their edge in place; new vertices are appended after the
    original vertices in edge order.
    """
    if not any(cuts.values()):
        return g, PointRemap.identity(g)

    used = set(g.vertices) | {e.id for e in g.edges}
    new_vertices: List[str] = []
    new_edges: List[Edge] = []
    pieces: List[ArcPiece] = []

    for edge in g.edges:
        offsets = cuts.get(edge.id, [])
        if not offsets:
            new_edges.append(edge)
            pieces.append(
                ArcPiece(
                    source_edge=edge.id,
                    source_start=0.0,
                    source_end=edge.length,
                    target_edge=edge.id,
                    target_start=0.0,
                    target_end=edge.length,
                )
            )
            continue

        names = [_fresh(f"{edge.id}_v{i}", used) for i in range(1, len(offsets) + 1)]
        new_vertices.extend(names)
        stops = [0.0, *offsets, edge.length]
        ends = [edge.u, *names, edge.v]
        for i in range(len(stops) - 1):
            piece_id = _fresh(f"{edge.id}_{i + 1}", used)
            length = stops[i + 1] - stops[i]
            new_edges.append(Edge(id=piece_id, u=ends[i], v=ends[i + 1], length=length))
            pieces.append(
                ArcPiece(
                    source_edge=edge.id,
                    source_start=stops[i],
                    source_end=stops[i + 1],
                    target_edge=piece_id,
                    target_start=0.0,
                    target_end=length,
                )
            )

    refined = WeightedGraph(
        vertices=(*g.vertices, *new_vertices), edges=tuple(new_edges)
    )
    logger.debug(
        "refined model: %d -> %d vertices, %d -> %d edges",
        len(g.vertices),
        len(refined.vertices),
        len(g.edges),
        len(refined.edges),
    )
    return refined, PointRemap(source=g, target=refined, pieces=tuple(pieces))


def _interior_cuts(
    g: WeightedGraph, points: Iterable[GraphPoint], tol: float
) -> Dict[str, List[float]]:
    cuts: Dict[str, List[float]] = {}
    for point in points:
        canonical = g.canonical_point(point.edge, point.t, tol)
        if g.point_vertex(canonical, tol) is not None:
            continue
        cuts.setdefault(canonical.edge, []).append(canonical.t)
    for edge_id, offsets in cuts.items():
        merged: List[float] = []
        for t in sorted(offsets):
            if not merged or t - merged[-1] > tol:
                merged.append(t)
        cuts[edge_id] = merged
    return cuts


def subdivide_at(
    g: WeightedGraph,
    p: GraphPoint,
    tol: float = DEFAULT_TOLERANCES.point,
) -> Tuple[WeightedGraph, PointRemap]:
    """
    Make ``p`` a vertex.

    Parameters
    ----------
    g : WeightedGraph
        Model to refine
    p : GraphPoint
        Point on ``g``
    tol : float, optional
        Endpoint snapping tolerance. Default is 1e-12.

    Returns
    -------
    tuple[WeightedGraph, PointRemap]
        The refined model (``g`` itself if ``p`` is already a vertex) and the
        map from ``g`` to it.

    Examples
    --------
    >>> g = build_graph(["A", "B"], [("e1", "A", "B", 1.0)])
    >>> fine, _ = subdivide_at(g, GraphPoint(edge="e1", t=0.5))
    >>> [e.length for e in fine.edges]
    [0.5, 0.5]
    """
    return _refine(g, _interior_cuts(g, [p], tol))


def refine_at(
    g: WeightedGraph,
    points: Iterable[GraphPoint],
    tol: float = DEFAULT_TOLERANCES.point,
) -> Tuple[WeightedGraph, PointRemap]:
    """Make every point in ``points`` a vertex in one refinement."""
    return _refine(g, _interior_cuts(g, points, tol))


def subdivide_uniform(g: WeightedGraph, n: int) -> Tuple[WeightedGraph, PointRemap]:
    """
    Split every edge into ``n`` equal parts.

    Parameters
    ----------
    g : WeightedGraph
    n : int
        Parts per edge, at least 1

    Returns
    -------
    tuple[WeightedGraph, PointRemap]
    """
    if n < 1:
        raise InvalidArgument(f"number of parts must be at least 1, got {n}")
    cuts = {e.id: [e.length * i / n for i in range(1, n)] for e in g.edges}
    return _refine(g, cuts)


def subdivide_max_step(g: WeightedGraph, h: float) -> Tuple[WeightedGraph, PointRemap]:
    """
    Split every edge into the fewest equal parts of length at most ``h``.

    Parameters
    ----------
    g : WeightedGraph
    h : float
        Largest allowed piece length, positive

    Returns
    -------
    tuple[WeightedGraph, PointRemap]
    """
    if not (h > 0 and math.isfinite(h)):
        raise InvalidArgument(f"mesh step must be positive, got {h!r}")
    cuts: Dict[str, List[float]] = {}
    for e in g.edges:
        parts = max(1, math.ceil(e.length / h - 1e-9))
        cuts[e.id] = [e.length * i / parts for i in range(1, parts)]
    return _refine(g, cuts)


def reverse_edge(g: WeightedGraph, edge_id: str) -> Tuple[WeightedGraph, PointRemap]:
    """
    Flip the stored orientation of one edge.

    The metrized graph is unchanged; only the arclength coordinate on
    ``edge_id`` now runs from its former second endpoint.
    """
    target = g[edge_id]
    edges = tuple(
        Edge(id=e.id, u=e.v, v=e.u, length=e.length) if e.id == edge_id else e
        for e in g.edges
    )
    flipped = WeightedGraph(vertices=g.vertices, edges=edges)
    pieces = tuple(
        ArcPiece(
            source_edge=e.id,
            source_start=0.0,
            source_end=e.length,
            target_edge=e.id,
            target_start=e.length if e.id == target.id else 0.0,
            target_end=0.0 if e.id == target.id else e.length,
        )
        for e in g.edges
    )
    return flipped, PointRemap(source=g, target=flipped, pieces=pieces)


def delete_edge(g: WeightedGraph, edge_id: str) -> WeightedGraph:
    """
    Remove the interior of one edge, keeping both endpoints.

    Raises
    ------
    Disconnected
        If the edge is a bridge.
    NoEdges
        If it was the only edge.
    """
    if edge_id not in g.edge_index:
        raise UnknownEdge(f"Cannot find edge: {edge_id}")
    return WeightedGraph(
        vertices=g.vertices, edges=tuple(e for e in g.edges if e.id != edge_id)
    )
