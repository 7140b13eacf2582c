from typing import Optional

from ..config import Tolerances
from ..core.weighted_graph import WeightedGraph
from .analyzer import GraphAnalyzer


def from_graph(
    g: WeightedGraph, verbose: int = 0, tolerances: Optional[Tolerances] = None
) -> GraphAnalyzer:
    """
    Create a GraphAnalyzer instance from an already built graph.

    Parameters
    ----------
    g : WeightedGraph
        The graph to analyze.
    verbose : int, optional
        Verbosity level. Default is 0.
    tolerances : Tolerances | None, optional
        Default reads ``METGRAPH_TOL``.

    Returns
    -------
    GraphAnalyzer
        An instance of the GraphAnalyzer class wrapping ``g``.
    """
    aly = GraphAnalyzer.__new__(GraphAnalyzer)
    aly.graph = g
    aly.verbose = verbose
    aly.tolerances = tolerances if tolerances is not None else Tolerances.from_env()
    return aly
