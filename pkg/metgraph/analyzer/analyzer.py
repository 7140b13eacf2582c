import io
import sys
from typing import List, Optional

from ..config import DEFAULT_SPECTRUM_SETTINGS, Tolerances
from ..constants import format_number, verdict
from ..core.queries import parse_point
from ..core.weighted_graph import GraphPoint, WeightedGraph
from ..utils.canonical import canonical_measure, cycle_rank_sum, foster_sum, tau
from ..utils.graph_summary import graph_summary
from ..utils.kirchhoff import spanning_tree_count
from ..utils.potential import (
    dissipated_energy,
    edge_currents,
    effective_resistance,
    j_function,
    j_value,
    solve_current,
)
from ..utils.spectral import compute_spectrum, verify_min_identity
from .graph_file import parse_graph_file
from .reports import currents_csv, eigenvector_csv, function_csv, measure_csv, spectrum_csv


class GraphAnalyzer:
    """Loads a graph file and runs the computations behind each CLI subcommand.

    Every report method returns the exact text the CLI writes to stdout.
    Points are given as text: a vertex name, or ``<edge>:<t>`` with ``t`` the
    arclength from the edge's first endpoint.

    Load and describe
    -----------------
    >>> aly = GraphAnalyzer("k4.graph")
    >>> print(aly)                              # sizes and invariant checks

    Resistances and potentials
    --------------------------
    >>> aly.resistance("v0", "v1")              # '0.5\\n'
    >>> aly.jfun("v0", "v1", at="e0_2:0.5")

    Canonical measure and its identities
    ------------------------------------
    >>> aly.canonical()                         # Measure CSV
    >>> aly.foster()
    """

    def __init__(
        self,
        filepath: str,
        verbose: int = 0,
        tolerances: Optional[Tolerances] = None,
    ) -> None:
        """
        Initialize a new analyzer instance.

        Parameters
        ----------
        filepath : str
            Path to a ``.graph`` file.
        verbose : int, optional
            Verbosity level. 0 for no output, 1 for basic output, 2 adds
            progress bars. Default is 0.
        tolerances : Tolerances | None, optional
            Tolerances for the PASS/FAIL lines. Default reads ``METGRAPH_TOL``.
        """
        self.verbose = verbose
        self.tolerances = tolerances if tolerances is not None else Tolerances.from_env()
        self.graph: WeightedGraph = parse_graph_file(filepath, verbose=verbose)

    def __str__(self) -> str:
        """Return the size and invariant report of the loaded graph."""
        old_stdout = sys.stdout

        buffer = io.StringIO()
        sys.stdout = buffer

        try:
            graph_summary(self.graph, tol=self.tolerances.verdict)
        finally:
            sys.stdout = old_stdout

        output = buffer.getvalue()
        buffer.close()
        return output

    def point(self, text: str) -> GraphPoint:
        """Resolve point text on the loaded graph."""
        return parse_point(self.graph, text)

    def validate(self) -> str:
        return str(self)

    def resistance(self, source: str, target: str) -> str:
        """Effective resistance between two points."""
        r = effective_resistance(self.graph, self.point(source), self.point(target))
        return f"{format_number(r)}\n"

    def jfun(self, y: str, z: str, at: Optional[str] = None) -> str:
        """
        The j-function with unit current in at ``y`` and out at ``z``.

        Parameters
        ----------
        y, z : str
            Source and ground points
        at : str | None, optional
            Evaluate at this point only. Default writes the whole function as
            ``edge,c0,c1`` rows on the graph refined at ``y`` and ``z``.

        Returns
        -------
        str
        """
        py, pz = self.point(y), self.point(z)
        if at is not None:
            return f"{format_number(j_value(self.graph, self.point(at), py, pz))}\n"
        return function_csv(j_function(self.graph, py, pz))

    def current(
        self, source: str, sink: str, amps: float, ground: Optional[str] = None
    ) -> str:
        """
        Potential and edge currents of ``amps`` flowing from ``source`` to ``sink``.

        The header reports the potential drop and dissipated energy, checks that
        ``energy = I * drop``, and is followed by ``edge,current`` rows on the
        refined graph.
        """
        ground = sink if ground is None else ground
        sol = solve_current(
            self.graph, self.point(source), self.point(sink), amps, self.point(ground)
        )
        drop = sol.potential(sol.source) - sol.potential(sol.sink)
        energy = dissipated_energy(sol)
        tol = self.tolerances.verdict * max(1.0, abs(energy))
        lines: List[str] = [
            f"source: {source}",
            f"sink: {sink}",
            f"ground: {ground}",
            f"current: {format_number(amps)}",
            f"potential drop: {format_number(drop)}",
            f"energy: {format_number(energy)}",
            f"energy = current * drop: {verdict(abs(energy - amps * drop) <= tol)}",
        ]
        return "\n".join(lines) + "\n" + currents_csv(edge_currents(sol))

    def canonical(self) -> str:
        """The canonical measure as Measure CSV."""
        return measure_csv(canonical_measure(self.graph, verbose=self.verbose))

    def foster(self) -> str:
        """Foster's sum against ``#V - 1``."""
        total = foster_sum(self.graph, verbose=self.verbose)
        expected = len(self.graph.vertices) - 1
        return (
            f"foster sum: {format_number(total)}\n"
            f"#V - 1: {expected}\n"
            f"verdict: {verdict(abs(total - expected) <= self.tolerances.verdict)}\n"
        )

    def cyclerank(self) -> str:
        """The cycle-rank sum against ``#E - #V + 1``."""
        total = cycle_rank_sum(self.graph, verbose=self.verbose)
        expected = len(self.graph.edges) - len(self.graph.vertices) + 1
        return (
            f"cycle rank sum: {format_number(total)}\n"
            f"#E - #V + 1: {expected}\n"
            f"verdict: {verdict(abs(total - expected) <= self.tolerances.verdict)}\n"
        )

    def tau(self, at: Optional[str] = None) -> str:
        """The tau constant, with base point ``at`` (default the first vertex)."""
        y = self.point(at) if at is not None else None
        return f"tau: {format_number(tau(self.graph, y))}\n"

    def spectrum(
        self,
        z: str,
        terms: int = DEFAULT_SPECTRUM_SETTINGS.terms,
        step: float = DEFAULT_SPECTRUM_SETTINGS.step,
        eigvecs: bool = False,
    ) -> str:
        """
        Smallest ``terms`` eigenvalues anchored at ``z`` as ``n,lambda`` rows.

        With ``eigvecs`` the eigenvector table follows after a blank line.
        """
        spec = compute_spectrum(self.graph, self.point(z), h=step, k=terms)
        report = spectrum_csv(spec)
        if eigvecs:
            report += "\n" + eigenvector_csv(spec)
        return report

    def trees(self) -> str:
        """Number of spanning trees of the underlying combinatorial graph."""
        return f"spanning trees: {spanning_tree_count(self.graph)}\n"


def identity_report(x: float, y: float, terms: int) -> str:
    """
    Partial sum of the odd sine series for ``min(x, y)`` on [0, 1].

    Parameters
    ----------
    x, y : float
    terms : int
        Number of odd terms

    Returns
    -------
    str
    """
    partial, error = verify_min_identity(x, y, terms)
    return (
        f"terms: {terms}\n"
        f"partial sum: {format_number(partial)}\n"
        f"min(x, y): {format_number(min(x, y))}\n"
        f"error: {format_number(error)}\n"
    )
