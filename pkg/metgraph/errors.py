"""
Exception hierarchy for metgraph.

Caller mistakes derive from :class:`InputError`; failed post-conditions derive
from :class:`InternalCheckError`. None of them derive from ``ValueError`` so
that pydantic validators let them propagate unchanged.
"""


class MetGraphError(Exception):
    """Base exception for metgraph errors."""

    pass


class InputError(MetGraphError):
    """Raised when the caller supplied invalid input."""

    pass


class InternalCheckError(MetGraphError):
    """Raised when a computed result fails its own post-condition."""

    pass


# ---------------------------------------------------------------------------
# Graph construction
# ---------------------------------------------------------------------------


class GraphValidationError(InputError):
    """Raised when a weighted graph violates a model invariant."""

    pass


class NoVertices(GraphValidationError):
    """Raised when a graph declares no vertices."""

    pass


class NoEdges(GraphValidationError):
    """Raised when a graph has no edges, so it spans no segment at all."""

    pass


class LoopEdge(GraphValidationError):
    """Raised when an edge starts and ends at the same vertex."""

    pass


class MultiEdge(GraphValidationError):
    """Raised when two edges join the same pair of vertices."""

    pass


class NonpositiveLength(GraphValidationError):
    """Raised when an edge length is zero, negative or not finite."""

    pass


class Disconnected(GraphValidationError):
    """Raised when the graph is not connected."""

    pass


class DuplicateName(GraphValidationError):
    """Raised when a vertex name or edge id is declared twice."""

    pass


class UnknownVertex(GraphValidationError):
    """Raised when an edge or query names a vertex that does not exist."""

    pass


class UnknownEdge(GraphValidationError):
    """Raised when a query names an edge that does not exist."""

    pass


class InvalidName(GraphValidationError):
    """Raised when a name does not match ``[A-Za-z0-9_]+``."""

    pass


# ---------------------------------------------------------------------------
# Points, functions and measures
# ---------------------------------------------------------------------------


class OffsetOutOfRange(InputError):
    """Raised when an arclength offset lies outside ``[0, L_e]``."""

    pass


class InvalidPoint(InputError):
    """Raised when point text cannot be resolved on a graph."""

    pass


class InvalidDirection(InputError):
    """Raised when a direction does not leave the given point."""

    pass


class ContinuityError(InputError):
    """Raised when incident edge polynomials disagree at a vertex."""

    pass


class DegreeTooHigh(InputError):
    """Raised when an edge polynomial exceeds the supported degree."""

    pass


class HostMismatch(InputError):
    """Raised when two objects living on different graphs are combined."""

    pass


class ConstantFunction(InputError):
    """Raised when an operation needs a nonconstant function."""

    pass


class NotAffine(InputError):
    """Raised when an operation needs a piecewise affine function."""

    pass


class MassNotZero(InputError):
    """Raised when a measure that must lie in Meas_0 has nonzero total mass."""

    pass


class ContinuousMeasureUnsupported(InputError):
    """Raised when a Poisson problem is posed with a measure that has a density."""

    pass


# ---------------------------------------------------------------------------
# Solvers
# ---------------------------------------------------------------------------


class SourceEqualsSink(InputError):
    """Raised when current is injected and extracted at the same point."""

    pass


class InvalidArgument(InputError):
    """Raised when a numeric argument is outside its allowed range."""

    pass


class NotAnEndpoint(InputError):
    """Raised when a vertex is not an endpoint of the given edge."""

    pass


class NotSeriesParallel(InputError):
    """Raised when a network cannot be reduced by series and parallel rules alone."""

    pass


class MeshTooCoarse(InputError):
    """Raised when more eigenpairs are requested than the fine model supports."""

    pass


class InvalidSetting(InputError):
    """Raised when a configuration value (e.g. ``METGRAPH_TOL``) is invalid."""

    pass


class GraphFileSyntaxError(InputError):
    """Raised when a graph file line cannot be parsed."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class SingularSystem(InternalCheckError):
    """Raised when a grounded Laplacian system cannot be factorized."""

    pass


class ResidualTooLarge(InternalCheckError):
    """Raised when a linear or eigen solve misses its residual tolerance."""

    pass


class LaplacianCheckFailed(InternalCheckError):
    """Raised when a computed potential does not have the prescribed Laplacian."""

    pass
