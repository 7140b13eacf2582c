"""
The Laplacian (Kirchhoff) matrix of a model and the linear algebra built on it.
"""

import logging
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import networkx as nx
import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator
from scipy import linalg

from ..calculus.measure import Atom, GraphMeasure
from ..calculus.operators import integrate, laplacian
from ..calculus.piecewise_poly import PiecewisePolyFunction
from ..config import DEFAULT_TOLERANCES
from ..core.refinement import subdivide_uniform
from ..core.weighted_graph import WeightedGraph
from ..errors import (
    ContinuousMeasureUnsupported,
    InvalidArgument,
    InvalidPoint,
    MassNotZero,
    ResidualTooLarge,
    SingularSystem,
)

logger = logging.getLogger(__name__)


class LaplacianMatrix(BaseModel):
    """Dense Laplacian matrix of a model, indexed by vertex order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: WeightedGraph = Field(description="Host model")
    matrix: NDArray = Field(description="Symmetric n x n matrix Q")

    def __matmul__(self, other: Any) -> NDArray:
        if isinstance(other, VertexFunction):
            return self.matrix @ other.values
        return self.matrix @ np.asarray(other, dtype=np.float64)

    def quadratic_form(self, x: Sequence[float]) -> float:
        """``x . Q x``, the energy of the vertex values ``x``."""
        v = np.asarray(x, dtype=np.float64)
        return float(v @ self.matrix @ v)

    def rank(self) -> int:
        return int(np.linalg.matrix_rank(self.matrix))

    def reduced(self, ground: str) -> NDArray:
        """``Q`` with the row and column of ``ground`` deleted."""
        keep = [i for i, v in enumerate(self.graph.vertices) if v != ground]
        return self.matrix[np.ix_(keep, keep)]


class VertexFunction(BaseModel):
    """One value per vertex, in vertex order."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: WeightedGraph = Field(description="Host model")
    values: NDArray = Field(description="Values as a 1D NumPy array")

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, v: Any) -> NDArray:
        """
        Validate that the value array is 1-dimensional
        """
        v = np.asarray(v, dtype=np.float64)
        if v.ndim != 1:
            raise InvalidArgument("values must be a 1-dimensional array.")
        return v

    def model_post_init(self, __context: Any) -> None:
        """
        Post-initialization validation that there is one value per vertex.
        """
        if self.values.shape[0] != len(self.graph.vertices):
            raise InvalidArgument(
                f"expected {len(self.graph.vertices)} vertex values, got {self.values.shape[0]}"
            )

    @classmethod
    def from_mapping(cls, g: WeightedGraph, values: Mapping[str, float]) -> "VertexFunction":
        return cls(graph=g, values=np.array([values.get(v, 0.0) for v in g.vertices]))

    def __getitem__(self, vertex: str) -> float:
        return float(self.values[self.graph.vertex_index[self.graph.require_vertex(vertex)]])

    def __len__(self) -> int:
        return self.values.shape[0]

    def as_dict(self) -> Dict[str, float]:
        return {v: float(x) for v, x in zip(self.graph.vertices, self.values)}


def laplacian_matrix(g: WeightedGraph) -> LaplacianMatrix:
    """
    Laplacian matrix of a model.

    Parameters
    ----------
    g : WeightedGraph

    Returns
    -------
    LaplacianMatrix
        ``Q_ij = -1/L_ij`` for adjacent ``i != j``, ``Q_ii = sum_k 1/L_ik``.

    Examples
    --------
    >>> laplacian_matrix(segment()).matrix
    array([[ 1., -1.],
           [-1.,  1.]])
    """
    matrix = nx.laplacian_matrix(
        g.to_networkx(), nodelist=list(g.vertices), weight="weight"
    ).toarray()
    return LaplacianMatrix(graph=g, matrix=np.asarray(matrix, dtype=np.float64))


def vertex_atoms(g: WeightedGraph, masses: Iterable[Tuple[str, float]]) -> GraphMeasure:
    """Discrete measure with the given mass at each named vertex."""
    return GraphMeasure(
        graph=g, atoms=[Atom(point=g.vertex_point(v), mass=m) for v, m in masses]
    )


def discrete_laplacian(g: WeightedGraph, f: VertexFunction) -> List[Tuple[str, float]]:
    """
    Atoms ``[Q f]_i`` at each vertex ``v_i``.

    Parameters
    ----------
    g : WeightedGraph
    f : VertexFunction

    Returns
    -------
    list[tuple[str, float]]
        ``(vertex, mass)`` pairs in vertex order; zero masses are left out.
    """
    masses = laplacian_matrix(g) @ f
    return [
        (v, float(m))
        for v, m in zip(g.vertices, masses)
        if abs(m) >= DEFAULT_TOLERANCES.atom
    ]


def interpolate_affine(g: WeightedGraph, f: VertexFunction) -> PiecewisePolyFunction:
    """
    Piecewise affine function with the given vertex values.

    Examples
    --------
    >>> g = segment()
    >>> interpolate_affine(g, VertexFunction(graph=g, values=[0.0, 1.0])).coefficients
    {'e1': (0.0, 1.0)}
    """
    return PiecewisePolyFunction(
        graph=g,
        coefficients={
            e.id: (f[e.u], (f[e.v] - f[e.u]) / e.length) for e in g.edges
        },
    )


def restrict_to_vertices(f: PiecewisePolyFunction) -> VertexFunction:
    """Values of ``f`` at the vertices of its model."""
    g = f.graph
    return VertexFunction(
        graph=g,
        values=np.array([f.vertex_value(v) if g.incidence[v] else 0.0 for v in g.vertices]),
    )


def _mass_vector(
    g: WeightedGraph, nu: Union[GraphMeasure, Mapping[str, float]]
) -> NDArray:
    c = np.zeros(len(g.vertices))
    if isinstance(nu, GraphMeasure):
        if not nu.is_discrete():
            raise ContinuousMeasureUnsupported(
                "grounded solves take point masses only; the measure has a density"
            )
        for atom in nu.atoms:
            vertex = g.point_vertex(atom.point)
            if vertex is None:
                raise InvalidPoint(f"atom at {atom.point} is not at a vertex; refine first")
            c[g.vertex_index[vertex]] += atom.mass
        return c
    for vertex, mass in nu.items():
        c[g.vertex_index[g.require_vertex(vertex)]] += float(mass)
    return c


def solve_grounded(
    g: WeightedGraph,
    nu: Union[GraphMeasure, Mapping[str, float]],
    ground: str,
    tol: float = DEFAULT_TOLERANCES.residual,
) -> VertexFunction:
    """
    Solve ``Q f = c`` with ``f(ground) = 0``.

    The row and column of ``ground`` are deleted and the remaining symmetric
    positive definite system is solved by Cholesky factorization.

    Parameters
    ----------
    g : WeightedGraph
    nu : GraphMeasure | Mapping[str, float]
        Point masses at vertices, summing to zero
    ground : str
        Vertex where the solution vanishes
    tol : float, optional
        Bound on the residual and on the total mass. Default is 1e-9.

    Returns
    -------
    VertexFunction

    Raises
    ------
    MassNotZero
        If the masses do not sum to zero.
    SingularSystem
        If the reduced matrix cannot be factorized.
    ResidualTooLarge
        If ``||Q f - c||_inf`` exceeds ``tol``.
    """
    g.require_vertex(ground)
    c = _mass_vector(g, nu)
    total = float(np.sum(c))
    if abs(total) > DEFAULT_TOLERANCES.mass:
        raise MassNotZero(f"point masses sum to {total!r}, expected 0")

    q = laplacian_matrix(g)
    values = np.zeros(len(g.vertices))
    keep = [i for i, v in enumerate(g.vertices) if v != ground]
    if keep and np.any(c != 0.0):
        try:
            factor = linalg.cho_factor(q.reduced(ground))
        except linalg.LinAlgError as exc:
            raise SingularSystem(f"grounded Laplacian at {ground!r} is singular: {exc}")
        values[keep] = linalg.cho_solve(factor, c[keep])

    residual = float(np.max(np.abs(q @ values - c))) if len(c) else 0.0
    logger.debug(
        "grounded solve: n=%d ground=%s residual=%.3e", len(g.vertices), ground, residual
    )
    if residual > tol * max(1.0, float(np.max(np.abs(c)))):
        raise ResidualTooLarge(
            f"grounded solve at {ground!r} has residual {residual:.3e} > {tol:.1e}"
        )
    return VertexFunction(graph=g, values=values)


def affine_approximation(f: PiecewisePolyFunction, n: int) -> PiecewisePolyFunction:
    """
    Piecewise affine approximation on the model with every edge split into
    ``n`` equal parts, agreeing with ``f`` at all vertices of that model.

    Parameters
    ----------
    f : PiecewisePolyFunction
    n : int
        Parts per edge, at least 1

    Returns
    -------
    PiecewisePolyFunction
        Lives on the refined model.
    """
    if n < 1:
        raise InvalidArgument(f"number of parts must be at least 1, got {n}")
    fine, remap = subdivide_uniform(f.graph, n)
    return interpolate_affine(fine, restrict_to_vertices(f.refine(remap)))


def weak_convergence_errors(
    f: PiecewisePolyFunction,
    test: PiecewisePolyFunction,
    ns: Sequence[int],
) -> List[float]:
    """
    ``|int test d(Laplacian f_N) - int test d(Laplacian f)|`` for each ``N`` in ``ns``.

    Parameters
    ----------
    f : PiecewisePolyFunction
        Function being approximated
    test : PiecewisePolyFunction
        Test function on the same model
    ns : Sequence[int]
        Numbers of parts per edge

    Returns
    -------
    list[float]
    """
    exact = integrate(test, laplacian(f))
    errors = []
    for n in ns:
        _, remap = subdivide_uniform(f.graph, n)
        approx = affine_approximation(f, n)
        errors.append(abs(integrate(test.refine(remap), laplacian(approx)) - exact))
        logger.debug("weak convergence: N=%d error=%.3e", n, errors[-1])
    return errors


def spanning_tree_count(g: WeightedGraph) -> int:
    """
    Number of spanning trees of the underlying combinatorial graph.

    Determinant of the unit-weight Laplacian with one row and column deleted.

    Examples
    --------
    >>> spanning_tree_count(cycle([1.0, 1.0, 1.0]))
    3
    """
    if len(g.vertices) == 1:
        return 1
    unit = nx.laplacian_matrix(g.to_networkx(), nodelist=list(g.vertices), weight=None)
    reduced = np.asarray(unit.toarray(), dtype=np.float64)[1:, 1:]
    return int(round(float(linalg.det(reduced))))


def vertex_resistance_matrix(g: WeightedGraph) -> NDArray:
    """
    All-pairs effective resistance between vertices.

    Uses the pseudo-inverse ``G`` of ``Q``: ``r_ij = G_ii + G_jj - 2 G_ij``.

    Returns
    -------
    NDArray
        Symmetric matrix indexed by vertex order, zero on the diagonal.
    """
    pinv = linalg.pinvh(laplacian_matrix(g).matrix)
    diag = np.diag(pinv)
    r = diag[:, None] + diag[None, :] - 2.0 * pinv
    np.fill_diagonal(r, 0.0)
    return r
