from typing import Any, Dict, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import DEFAULT_TOLERANCES
from ..constants import MAX_POLY_DEGREE
from ..core.refinement import PointRemap
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import ContinuityError, DegreeTooHigh, HostMismatch, UnknownEdge

Coefficients = Tuple[float, ...]


def trim_coefficients(coef: Any) -> Coefficients:
    """Ascending coefficients as floats with exact trailing zeros removed; never empty."""
    values = [float(c) for c in np.atleast_1d(np.asarray(coef, dtype=np.float64))]
    while len(values) > 1 and values[-1] == 0.0:
        values.pop()
    return tuple(values) if values else (0.0,)


class PiecewisePolyFunction(BaseModel):
    """
    A continuous function given by one polynomial per edge.

    ``coefficients[e]`` lists ``c_0, c_1, ...`` of ``f_e(t) = sum c_k t^k`` in
    the arclength coordinate of edge ``e``. Degrees up to 4 are supported and
    the polynomials must agree at shared vertices.

    Examples
    --------
    >>> g = segment()
    >>> f = PiecewisePolyFunction(graph=g, coefficients={"e1": (0.0, 1.0)})
    >>> f(GraphPoint(edge="e1", t=0.25))
    0.25
    """

    model_config = ConfigDict(frozen=True)

    graph: WeightedGraph = Field(description="Host model")
    coefficients: Dict[str, Coefficients] = Field(
        description="Edge id -> ascending polynomial coefficients in the edge's arclength"
    )

    @model_validator(mode="before")
    @classmethod
    def _normalize(cls, data: Any) -> Any:
        if isinstance(data, dict) and "coefficients" in data:
            data = dict(data)
            data["coefficients"] = {
                eid: trim_coefficients(coef) for eid, coef in data["coefficients"].items()
            }
        return data

    @model_validator(mode="after")
    def _check_function(self) -> "PiecewisePolyFunction":
        for eid in self.coefficients:
            if eid not in self.graph.edge_index:
                raise UnknownEdge(f"coefficients given for unknown edge {eid!r}")
        for e in self.graph.edges:
            if e.id not in self.coefficients:
                raise UnknownEdge(f"no polynomial given for edge {e.id!r}")
            degree = len(self.coefficients[e.id]) - 1
            if degree > MAX_POLY_DEGREE:
                raise DegreeTooHigh(
                    f"edge {e.id!r} has degree {degree}; at most {MAX_POLY_DEGREE} is supported"
                )

        tol = DEFAULT_TOLERANCES.continuity
        for vertex, incident in self.graph.incidence.items():
            if len(incident) < 2:
                continue
            ends = [
                (edge.id, self._end_value(edge.id, 0.0 if is_start else edge.length))
                for edge, is_start in incident
            ]
            first_edge, first_value = ends[0]
            for other_edge, value in ends[1:]:
                if abs(value - first_value) > tol:
                    raise ContinuityError(
                        f"discontinuous at vertex {vertex!r}: edge {first_edge!r} gives "
                        f"{first_value!r}, edge {other_edge!r} gives {value!r}"
                    )
        return self

    def _end_value(self, edge_id: str, t: float) -> float:
        return float(Polynomial(self.coefficients[edge_id])(t))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, g: WeightedGraph, value: float) -> "PiecewisePolyFunction":
        return cls(graph=g, coefficients={e.id: (float(value),) for e in g.edges})

    @classmethod
    def zero(cls, g: WeightedGraph) -> "PiecewisePolyFunction":
        return cls.constant(g, 0.0)

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def polynomial(self, edge_id: str) -> Polynomial:
        """``f_e`` as a numpy Polynomial in the arclength of ``edge_id``."""
        if edge_id not in self.coefficients:
            raise UnknownEdge(f"Cannot find edge: {edge_id}")
        return Polynomial(self.coefficients[edge_id])

    def evaluate(self, p: GraphPoint) -> float:
        """
        Value of the function at a point of the host model.

        Parameters
        ----------
        p : GraphPoint

        Returns
        -------
        float
        """
        point = self.graph.canonical_point(p.edge, p.t)
        return float(self.polynomial(point.edge)(point.t))

    def __call__(self, p: GraphPoint) -> float:
        return self.evaluate(p)

    def vertex_value(self, vertex: str) -> float:
        return self.evaluate(self.graph.vertex_point(vertex))

    @property
    def degree(self) -> int:
        return max(len(c) - 1 for c in self.coefficients.values())

    @property
    def is_affine(self) -> bool:
        return self.degree <= 1

    def refine(self, remap: PointRemap) -> "PiecewisePolyFunction":
        """
        The same function on the target model of ``remap``.

        Parameters
        ----------
        remap : PointRemap
            Map from this function's host to a refinement or reorientation of it

        Returns
        -------
        PiecewisePolyFunction
        """
        self._check_host(remap.source)
        return PiecewisePolyFunction(
            graph=remap.target,
            coefficients=remap.transport_polynomials(self.coefficients),
        )

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _check_host(self, g: WeightedGraph) -> None:
        if g is not self.graph and g != self.graph:
            raise HostMismatch("functions live on different models")

    def _combine(self, other: "PiecewisePolyFunction", sign: float) -> "PiecewisePolyFunction":
        self._check_host(other.graph)
        return PiecewisePolyFunction(
            graph=self.graph,
            coefficients={
                eid: tuple(
                    (self.polynomial(eid) + sign * other.polynomial(eid)).coef
                )
                for eid in self.coefficients
            },
        )

    def __add__(
        self, other: Union["PiecewisePolyFunction", int, float]
    ) -> "PiecewisePolyFunction":
        """
        Add two functions on the same model, or add a constant.
        """
        if isinstance(other, PiecewisePolyFunction):
            return self._combine(other, 1.0)
        if np.isscalar(other):
            return self._combine(PiecewisePolyFunction.constant(self.graph, float(other)), 1.0)
        raise TypeError("add expects (PiecewisePolyFunction, PiecewisePolyFunction|scalar)")

    def __radd__(self, other: Union[int, float]) -> "PiecewisePolyFunction":
        return self.__add__(other)

    def __sub__(
        self, other: Union["PiecewisePolyFunction", int, float]
    ) -> "PiecewisePolyFunction":
        if isinstance(other, PiecewisePolyFunction):
            return self._combine(other, -1.0)
        if np.isscalar(other):
            return self._combine(PiecewisePolyFunction.constant(self.graph, float(other)), -1.0)
        raise TypeError("sub expects (PiecewisePolyFunction, PiecewisePolyFunction|scalar)")

    def __mul__(self, other: Union[int, float]) -> "PiecewisePolyFunction":
        """
        Multiply by a scalar.
        """
        if not np.isscalar(other):
            raise TypeError("mul expects (PiecewisePolyFunction, scalar)")
        return PiecewisePolyFunction(
            graph=self.graph,
            coefficients={
                eid: tuple(float(other) * c for c in coef)
                for eid, coef in self.coefficients.items()
            },
        )

    def __rmul__(self, other: Union[int, float]) -> "PiecewisePolyFunction":
        return self.__mul__(other)

    def __neg__(self) -> "PiecewisePolyFunction":
        return self.__mul__(-1.0)
