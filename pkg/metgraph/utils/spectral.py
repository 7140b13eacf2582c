"""
Eigenfunctions of the Laplacian anchored at a point, on a fine model.

The model is refined so that the anchor ``z`` is a vertex and every edge is
split into equal parts no longer than the mesh step. On the fine model the
stiffness matrix is the Kirchhoff matrix and the mass matrix is lumped:
``M_ii`` is half the total length of the fine edges at vertex ``i``. The
value at ``z`` is pinned to zero by deleting its row and column, and the
symmetric problem ``M^{-1/2} Q M^{-1/2}`` is handed to ``scipy.linalg.eigh``.
"""

import logging
import math
from typing import Any, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field
from scipy import linalg

from ..calculus.piecewise_poly import PiecewisePolyFunction
from ..config import DEFAULT_SPECTRUM_SETTINGS
from ..core.refinement import PointRemap, subdivide_at, subdivide_max_step
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..errors import HostMismatch, InvalidArgument, MeshTooCoarse, ResidualTooLarge
from .kirchhoff import laplacian_matrix, restrict_to_vertices

logger = logging.getLogger(__name__)

EIGEN_RESIDUAL_TOL = 1e-8


class Spectrum(BaseModel):
    """
    The ``k`` smallest eigenpairs of the Laplacian anchored at ``z``.

    Eigenvalues are ascending. ``eigenvectors[n]`` holds the values of the
    ``n``-th eigenfunction at every vertex of ``fine`` (zero at the anchor),
    normalized so that the lumped ``int phi^2 dx`` is 1 and signed so that
    its first nonzero entry is positive.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    graph: WeightedGraph = Field(description="Host model")
    anchor: GraphPoint = Field(description="Point z where every eigenfunction vanishes")
    step: float = Field(description="Largest fine-edge length")
    fine: WeightedGraph = Field(description="Fine model the eigenvectors live on")
    remap: PointRemap = Field(description="Map from the host model to the fine model")
    anchor_vertex: str = Field(description="Vertex of the fine model at the anchor")
    eigenvalues: NDArray = Field(description="Eigenvalues, ascending, shape (k,)")
    eigenvectors: NDArray = Field(description="Vertex values, shape (k, #fine vertices)")
    stiffness: NDArray = Field(description="Kirchhoff matrix of the fine model")
    mass: NDArray = Field(description="Lumped mass per fine vertex")

    def __len__(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def free(self) -> NDArray:
        """Indices of fine vertices other than the anchor."""
        anchor = self.fine.vertex_index[self.anchor_vertex]
        return np.array([i for i in range(len(self.fine.vertices)) if i != anchor])

    def eigenfunction_values(self, x: GraphPoint) -> NDArray:
        """
        Every eigenfunction evaluated at a point of the host model.

        Values are interpolated linearly inside the fine edge containing ``x``.

        Parameters
        ----------
        x : GraphPoint

        Returns
        -------
        NDArray
            Shape ``(k,)``.
        """
        p = self.remap(x)
        edge = self.fine[p.edge]
        s = p.t / edge.length
        iu = self.fine.vertex_index[edge.u]
        iv = self.fine.vertex_index[edge.v]
        return (1.0 - s) * self.eigenvectors[:, iu] + s * self.eigenvectors[:, iv]


class FourierCoefficients(BaseModel):
    """Generalized Fourier coefficients ``a_0`` and ``a_1 .. a_k``."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a0: float = Field(description="Value at the anchor, the integral against delta_z")
    a: NDArray = Field(description="Coefficients of the eigenfunctions, shape (k,)")

    def __len__(self) -> int:
        return int(self.a.shape[0])


def lumped_mass(g: WeightedGraph) -> NDArray:
    """Half the total length of the edges at each vertex, in vertex order."""
    mass = np.zeros(len(g.vertices))
    for e in g.edges:
        mass[g.vertex_index[e.u]] += 0.5 * e.length
        mass[g.vertex_index[e.v]] += 0.5 * e.length
    return mass


def _fix_signs(vectors: NDArray) -> NDArray:
    """Flip each row so that its first clearly nonzero entry is positive."""
    fixed = vectors.copy()
    for row in fixed:
        scale = np.max(np.abs(row))
        nonzero = np.flatnonzero(np.abs(row) > 1e-10 * scale)
        if nonzero.size and row[nonzero[0]] < 0:
            row *= -1.0
    return fixed


def compute_spectrum(
    g: WeightedGraph,
    z: GraphPoint,
    h: float = DEFAULT_SPECTRUM_SETTINGS.step,
    k: int = DEFAULT_SPECTRUM_SETTINGS.terms,
) -> Spectrum:
    """
    Discretize and solve the eigenproblem anchored at ``z``.

    Parameters
    ----------
    g : WeightedGraph
    z : GraphPoint
        Anchor; every eigenfunction vanishes here
    h : float, optional
        Mesh step. Default is 1/200.
    k : int, optional
        Number of eigenpairs. Default is 50.

    Returns
    -------
    Spectrum

    Raises
    ------
    MeshTooCoarse
        If ``k`` exceeds the number of free fine vertices. ``k`` equal to that
        number is accepted and returns the whole reduced spectrum.
    ResidualTooLarge
        If some eigenpair misses the residual bound.

    Examples
    --------
    On the unit segment anchored at ``t = 0`` the eigenvalues approach
    ``(pi n / 2)^2`` for odd ``n``.
    """
    if not (h > 0 and math.isfinite(h)):
        raise InvalidArgument(f"mesh step must be positive, got {h!r}")
    if k < 1:
        raise InvalidArgument(f"number of eigenpairs must be at least 1, got {k}")

    anchored, to_anchored = subdivide_at(g, z)
    fine, to_fine = subdivide_max_step(anchored, h)
    remap = to_anchored.then(to_fine)
    anchor_vertex = fine.point_vertex(remap(z))
    assert anchor_vertex is not None

    stiffness = laplacian_matrix(fine).matrix
    mass = lumped_mass(fine)
    anchor = fine.vertex_index[anchor_vertex]
    free = np.array([i for i in range(len(fine.vertices)) if i != anchor])
    if k > free.size:
        raise MeshTooCoarse(
            f"asked for {k} eigenpairs but the fine model has only {free.size} free vertices; "
            f"decrease the mesh step below {h!r}"
        )

    scale = 1.0 / np.sqrt(mass[free])
    reduced = scale[:, None] * stiffness[np.ix_(free, free)] * scale[None, :]
    reduced = 0.5 * (reduced + reduced.T)
    logger.debug("eigen-solve: %d free vertices, %d eigenpairs", free.size, k)
    eigenvalues, vectors = linalg.eigh(reduced, subset_by_index=[0, k - 1])

    eigenvectors = np.zeros((k, len(fine.vertices)))
    eigenvectors[:, free] = (scale[:, None] * vectors).T
    eigenvectors = _fix_signs(eigenvectors)

    spectrum = Spectrum(
        graph=g,
        anchor=z,
        step=h,
        fine=fine,
        remap=remap,
        anchor_vertex=anchor_vertex,
        eigenvalues=np.asarray(eigenvalues, dtype=np.float64),
        eigenvectors=eigenvectors,
        stiffness=stiffness,
        mass=mass,
    )
    residuals = eigen_residuals(spectrum)
    worst = int(np.argmax(residuals / np.maximum(1.0, spectrum.eigenvalues)))
    if residuals[worst] > EIGEN_RESIDUAL_TOL * max(1.0, float(spectrum.eigenvalues[worst])):
        raise ResidualTooLarge(
            f"eigenpair {worst + 1} has residual {residuals[worst]:.3e}"
        )
    return spectrum


def eigen_residuals(spec: Spectrum) -> NDArray:
    """``max |Q phi - lambda M phi|`` over the free vertices, per eigenpair."""
    free = spec.free
    q_phi = spec.eigenvectors @ spec.stiffness.T
    m_phi = spec.eigenvectors * spec.mass[None, :]
    diff = q_phi - spec.eigenvalues[:, None] * m_phi
    return np.max(np.abs(diff[:, free]), axis=1)


def eigen_constant(spec: Spectrum, n: int) -> float:
    """
    The constant ``C = lambda int phi dx`` of the ``n``-th eigenpair (1-based).

    It is the mass the anchor absorbs so that the Laplacian of ``phi`` is
    ``lambda phi dx - C delta_z``.
    """
    if not 1 <= n <= len(spec):
        raise InvalidArgument(f"eigenpair index must be in 1..{len(spec)}, got {n}")
    return float(spec.eigenvalues[n - 1] * (spec.mass @ spec.eigenvectors[n - 1]))


def _fine_values(spec: Spectrum, f: PiecewisePolyFunction) -> NDArray:
    if f.graph is not spec.graph and f.graph != spec.graph:
        raise HostMismatch("function and spectrum live on different models")
    return restrict_to_vertices(f.refine(spec.remap)).values


def fourier_coefficients(spec: Spectrum, f: PiecewisePolyFunction) -> FourierCoefficients:
    """
    Coefficients of ``f`` in the eigenbasis.

    Parameters
    ----------
    spec : Spectrum
    f : PiecewisePolyFunction
        Function on the spectrum's host model

    Returns
    -------
    FourierCoefficients
        ``a_0 = f(z)`` and ``a_n = int (f - a_0) phi_n dx`` with the lumped
        inner product.
    """
    values = _fine_values(spec, f)
    a0 = f(spec.anchor)
    weighted = spec.mass * (values - a0)
    return FourierCoefficients(a0=a0, a=spec.eigenvectors @ weighted)


def centered_norm_squared(spec: Spectrum, f: PiecewisePolyFunction) -> float:
    """Lumped ``int (f - f(z))^2 dx``; bounds ``sum a_n^2`` from above."""
    values = _fine_values(spec, f)
    centered = values - f(spec.anchor)
    return float(spec.mass @ (centered * centered))


def reconstruct(
    spec: Spectrum,
    coefficients: FourierCoefficients,
    x: GraphPoint,
    terms: Optional[int] = None,
) -> float:
    """
    Truncated series ``a_0 + sum a_n phi_n(x)``.

    Parameters
    ----------
    spec : Spectrum
    coefficients : FourierCoefficients
    x : GraphPoint
        Point of the host model
    terms : int, optional
        Number of eigenfunctions to use. Default uses all of them.

    Returns
    -------
    float
    """
    n = len(spec) if terms is None else min(terms, len(spec))
    phi = spec.eigenfunction_values(x)[:n]
    return float(coefficients.a0 + coefficients.a[:n] @ phi)


def j_spectral(
    spec: Spectrum, x: GraphPoint, y: GraphPoint, terms: Optional[int] = None
) -> float:
    """
    ``sum phi_n(x) phi_n(y) / lambda_n``, the eigen-expansion of ``j_z(x, y)``.

    Parameters
    ----------
    spec : Spectrum
    x, y : GraphPoint
        Points of the host model
    terms : int, optional
        Number of eigenpairs to sum. Default uses all of them.

    Returns
    -------
    float
    """
    n = len(spec) if terms is None else min(terms, len(spec))
    phi_x = spec.eigenfunction_values(x)[:n]
    phi_y = spec.eigenfunction_values(y)[:n]
    return float(np.sum(phi_x * phi_y / spec.eigenvalues[:n]))


def verify_min_identity(x: float, y: float, k: int) -> Tuple[float, float]:
    """
    Partial sum of ``8 sum_{n odd} sin(pi n x / 2) sin(pi n y / 2) / (pi^2 n^2)``.

    Parameters
    ----------
    x, y : float
        Points of [0, 1]
    k : int
        Number of odd terms; ``n = 1, 3, ..., 2k - 1``

    Returns
    -------
    tuple[float, float]
        The partial sum and its distance from ``min(x, y)``.

    Examples
    --------
    >>> verify_min_identity(0.0, 0.5, 10)
    (0.0, 0.0)
    """
    if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
        raise InvalidArgument(f"x and y must lie in [0, 1], got ({x!r}, {y!r})")
    if k < 1:
        raise InvalidArgument(f"number of terms must be at least 1, got {k}")
    n = 2.0 * np.arange(1, k + 1) - 1.0
    terms = np.sin(np.pi * n * x / 2.0) * np.sin(np.pi * n * y / 2.0) / (n * n)
    partial = float(8.0 / np.pi**2 * math.fsum(terms))
    return partial, abs(partial - min(x, y))


def eigenvalue_refinement_ratios(
    g: WeightedGraph, z: GraphPoint, h: float, k: int
) -> NDArray:
    """
    ``(lambda(h) - lambda(h/2)) / (lambda(h/2) - lambda(h/4))`` per eigenvalue.

    Values near 4 indicate second-order convergence of the discrete
    eigenvalues as the mesh is refined.
    """
    levels: List[Any] = [compute_spectrum(g, z, step, k).eigenvalues for step in (h, h / 2, h / 4)]
    return (levels[0] - levels[1]) / (levels[1] - levels[2])
