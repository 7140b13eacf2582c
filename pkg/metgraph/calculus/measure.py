import math
from typing import Any, Dict, List, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_TOLERANCES
from ..core.refinement import PointRemap
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import HostMismatch, UnknownEdge
from .piecewise_poly import Coefficients, trim_coefficients


class Atom(BaseModel):
    """A point mass."""

    model_config = ConfigDict(frozen=True)

    point: GraphPoint = Field(description="Canonical location of the atom")
    mass: float = Field(description="Signed mass")


def _as_atom(item: Any) -> Atom:
    if isinstance(item, Atom):
        return item
    point, mass = item
    return Atom(point=point, mass=float(mass))


class GraphMeasure(BaseModel):
    """
    A measure made of point atoms plus a polynomial density on each edge.

    On construction, atoms are moved to canonical points, atoms at the same
    point are merged, atoms lighter than 1e-12 are dropped, and the rest are
    sorted by (edge index, offset). Edges without an entry in ``densities``
    carry no density.

    Examples
    --------
    >>> g = segment()
    >>> mu = GraphMeasure(graph=g, atoms=[(GraphPoint(edge="e1", t=1.0), 2.0)])
    >>> mu.total_mass()
    2.0
    """

    model_config = ConfigDict(frozen=True)

    graph: WeightedGraph = Field(description="Host model")
    atoms: Tuple[Atom, ...] = Field(default=(), description="Point masses, sorted")
    densities: Dict[str, Coefficients] = Field(
        default_factory=dict,
        description="Edge id -> ascending density coefficients in the edge's arclength",
    )

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if not isinstance(data, dict) or "graph" not in data:
            return data
        g: WeightedGraph = data["graph"]
        data = dict(data)

        merged: Dict[Tuple[str, float], float] = {}
        points: Dict[Tuple[str, float], GraphPoint] = {}
        for atom in (_as_atom(item) for item in data.get("atoms", ())):
            point = g.canonical_point(atom.point.edge, atom.point.t)
            key = next(
                (
                    k
                    for k, q in points.items()
                    if q.edge == point.edge and abs(q.t - point.t) <= DEFAULT_TOLERANCES.point
                ),
                (point.edge, point.t),
            )
            points.setdefault(key, point)
            merged[key] = merged.get(key, 0.0) + atom.mass
        kept = [
            Atom(point=points[key], mass=mass)
            for key, mass in merged.items()
            if abs(mass) >= DEFAULT_TOLERANCES.atom
        ]
        kept.sort(key=lambda a: g.point_key(a.point))
        data["atoms"] = tuple(kept)

        densities: Dict[str, Coefficients] = {}
        for eid, coef in dict(data.get("densities", {})).items():
            if eid not in g.edge_index:
                raise UnknownEdge(f"density given for unknown edge {eid!r}")
            trimmed = trim_coefficients(coef)
            if any(c != 0.0 for c in trimmed):
                densities[eid] = trimmed
        data["densities"] = {e.id: densities[e.id] for e in g.edges if e.id in densities}
        return data

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, g: WeightedGraph) -> "GraphMeasure":
        return cls(graph=g)

    @classmethod
    def delta(cls, g: WeightedGraph, p: GraphPoint, mass: float = 1.0) -> "GraphMeasure":
        """Point mass ``mass`` at ``p``."""
        return cls(graph=g, atoms=[Atom(point=p, mass=mass)])

    @classmethod
    def lebesgue(cls, g: WeightedGraph) -> "GraphMeasure":
        """Arclength measure dx: density 1 on every edge."""
        return cls(graph=g, densities={e.id: (1.0,) for e in g.edges})

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def density(self, edge_id: str) -> Polynomial:
        if edge_id not in self.graph.edge_index:
            raise UnknownEdge(f"Cannot find edge: {edge_id}")
        return Polynomial(self.densities.get(edge_id, (0.0,)))

    def atom_mass(self, p: Union[GraphPoint, str]) -> float:
        """Mass of the atom at ``p`` (a point or a vertex name), 0 if there is none."""
        point = self.graph.canonicalize(p)
        for atom in self.atoms:
            if atom.point.edge == point.edge and abs(atom.point.t - point.t) <= DEFAULT_TOLERANCES.point:
                return atom.mass
        return 0.0

    def atom_at_vertex(self) -> Dict[str, float]:
        """Vertex name -> atom mass, for atoms sitting on vertices."""
        table: Dict[str, float] = {}
        for atom in self.atoms:
            vertex = self.graph.point_vertex(atom.point)
            if vertex is not None:
                table[vertex] = atom.mass
        return table

    def is_discrete(self, tol: float = DEFAULT_TOLERANCES.measure) -> bool:
        """True if every density coefficient is within ``tol`` of zero."""
        return all(abs(c) <= tol for coef in self.densities.values() for c in coef)

    def total_mass(self) -> float:
        """Sum of atom masses plus the exact integral of every density."""
        return total_mass(self)

    def refine(self, remap: PointRemap) -> "GraphMeasure":
        """The same measure on the target model of ``remap``."""
        self._check_host(remap.source)
        return GraphMeasure(
            graph=remap.target,
            atoms=[Atom(point=remap(a.point), mass=a.mass) for a in self.atoms],
            densities=remap.transport_polynomials(self.densities),
        )

    def is_close(self, other: "GraphMeasure", tol: float = DEFAULT_TOLERANCES.measure) -> bool:
        return measures_close(self, other, tol)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_host(self, g: WeightedGraph) -> None:
        if g is not self.graph and g != self.graph:
            raise HostMismatch("measures live on different models")

    def _combine(self, other: "GraphMeasure", sign: float) -> "GraphMeasure":
        self._check_host(other.graph)
        densities = {
            e.id: tuple((self.density(e.id) + sign * other.density(e.id)).coef)
            for e in self.graph.edges
        }
        return GraphMeasure(
            graph=self.graph,
            atoms=[*self.atoms, *(Atom(point=a.point, mass=sign * a.mass) for a in other.atoms)],
            densities=densities,
        )

    def __add__(self, other: "GraphMeasure") -> "GraphMeasure":
        """
        Add two measures on the same model.
        """
        if not isinstance(other, GraphMeasure):
            raise TypeError("add expects (GraphMeasure, GraphMeasure)")
        return self._combine(other, 1.0)

    def __sub__(self, other: "GraphMeasure") -> "GraphMeasure":
        if not isinstance(other, GraphMeasure):
            raise TypeError("sub expects (GraphMeasure, GraphMeasure)")
        return self._combine(other, -1.0)

    def __mul__(self, other: Union[int, float]) -> "GraphMeasure":
        """
        Multiply by a scalar.
        """
        if not np.isscalar(other):
            raise TypeError("mul expects (GraphMeasure, scalar)")
        c = float(other)
        return GraphMeasure(
            graph=self.graph,
            atoms=[Atom(point=a.point, mass=c * a.mass) for a in self.atoms],
            densities={eid: tuple(c * x for x in coef) for eid, coef in self.densities.items()},
        )

    def __rmul__(self, other: Union[int, float]) -> "GraphMeasure":
        return self.__mul__(other)

    def __neg__(self) -> "GraphMeasure":
        return self.__mul__(-1.0)


def total_mass(mu: GraphMeasure) -> float:
    """
    Total mass of a measure.

    Parameters
    ----------
    mu : GraphMeasure

    Returns
    -------
    float
        Sum of atom masses plus the closed-form integral of each edge density.

    Examples
    --------
    >>> total_mass(GraphMeasure.lebesgue(circle()))
    1.0
    """
    terms: List[float] = [a.mass for a in mu.atoms]
    for eid, coef in mu.densities.items():
        antiderivative = Polynomial(coef).integ()
        terms.append(float(antiderivative(mu.graph[eid].length) - antiderivative(0.0)))
    return math.fsum(terms)


def measures_close(
    mu: GraphMeasure,
    nu: GraphMeasure,
    tol: float = DEFAULT_TOLERANCES.measure,
) -> bool:
    """
    Compare two measures on the same model.

    Atoms are matched by canonical point (a missing atom counts as mass 0)
    and densities coefficient by coefficient; each difference must be at
    most ``tol``.
    """
    mu._check_host(nu.graph)
    if _largest_atom_gap(mu, nu) > tol:
        return False
    for e in mu.graph.edges:
        a = np.asarray(mu.densities.get(e.id, (0.0,)))
        b = np.asarray(nu.densities.get(e.id, (0.0,)))
        size = max(a.size, b.size)
        diff = np.pad(a, (0, size - a.size)) - np.pad(b, (0, size - b.size))
        if np.max(np.abs(diff)) > tol:
            return False
    return True


def _largest_atom_gap(mu: GraphMeasure, nu: GraphMeasure) -> float:
    gaps = [abs(a.mass - nu.atom_mass(a.point)) for a in mu.atoms]
    gaps += [abs(a.mass - mu.atom_mass(a.point)) for a in nu.atoms]
    return max(gaps, default=0.0)
