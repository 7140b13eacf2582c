import numpy as np

from ..config import DEFAULT_TOLERANCES
from ..constants import DELIMITER, format_number, title_block, verdict
from ..core.queries import bridges, cycle_rank
from ..core.weighted_graph import WeightedGraph
from .kirchhoff import laplacian_matrix


def graph_summary(g: WeightedGraph, tol: float = DEFAULT_TOLERANCES.verdict) -> None:
    """
    Print the size of a model and check its structural invariants.

    Parameters
    ----------
    g : WeightedGraph
        Model to describe
    tol : float, optional
        Tolerance of the PASS/FAIL lines. Default is 1e-9.
    """
    bridge_ids = bridges(g)
    print(title_block("Graph Summary"))
    print(f"Vertices:      {len(g.vertices)}")
    print(f"Edges:         {len(g.edges)}")
    print(f"Total length:  {format_number(g.total_length)}")
    print(f"Cycle rank:    {cycle_rank(g)}")
    print(f"Bridges:       {' '.join(bridge_ids) if bridge_ids else '-'}")
    print(DELIMITER)

    print(title_block("Valence"))
    for v in g.vertices:
        print(f"{v}: {g.valence(v)}")
    print(DELIMITER)

    q = laplacian_matrix(g).matrix
    valence_sum = sum(g.valence(v) for v in g.vertices)
    row_sum = float(np.max(np.abs(q.sum(axis=1)))) if q.size else 0.0
    asymmetry = float(np.max(np.abs(q - q.T))) if q.size else 0.0
    rank = int(np.linalg.matrix_rank(q)) if q.size else 0

    print(title_block("Invariants"))
    print(f"Valence sum = 2#E:        {verdict(valence_sum == 2 * len(g.edges))}")
    print(f"Laplacian row sums zero:  {verdict(row_sum <= tol)}")
    print(f"Laplacian symmetric:      {verdict(asymmetry <= tol)}")
    print(f"Laplacian kernel dim 1:   {verdict(rank == len(g.vertices) - 1)}")
    print(f"Bridges = acyclic edges:  {verdict((cycle_rank(g) == 0) == (len(bridge_ids) == len(g.edges)))}")
    print(DELIMITER)
