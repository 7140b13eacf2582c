"""
Ready-made models: the bundled examples plus random graphs for property tests.

Random generators take a ``numpy.random.Generator`` so that callers control
reproducibility.
"""

from typing import List, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgument
from .weighted_graph import EdgeDescriptor, WeightedGraph, build_graph

LENGTH_RANGE = (0.2, 2.0)


def segment(length: float = 1.0) -> WeightedGraph:
    """Single edge ``e1`` from ``A`` to ``B``."""
    return build_graph(["A", "B"], [("e1", "A", "B", length)])


def path(lengths: Sequence[float]) -> WeightedGraph:
    """Path ``v0 - v1 - ... - vn`` with edge ``e<i>`` of length ``lengths[i-1]``."""
    names = [f"v{i}" for i in range(len(lengths) + 1)]
    return build_graph(
        names,
        [(f"e{i + 1}", names[i], names[i + 1], L) for i, L in enumerate(lengths)],
    )


def cycle(lengths: Sequence[float]) -> WeightedGraph:
    """
    Circle modelled by ``len(lengths)`` edges.

    A model of a circle without loops or multiple edges needs at least three
    edges.
    """
    n = len(lengths)
    if n < 3:
        raise InvalidArgument(f"a cycle model needs at least 3 edges, got {n}")
    names = [f"v{i}" for i in range(n)]
    return build_graph(
        names,
        [(f"e{i + 1}", names[i], names[(i + 1) % n], L) for i, L in enumerate(lengths)],
    )


def circle(total: float = 1.0) -> WeightedGraph:
    """Circle of the given length as three equal edges."""
    return cycle([total / 3] * 3)


def star_example() -> WeightedGraph:
    """Star with center Q and leaves P, R, S; lengths PQ = 1/2, QS = 1/2, RQ = 1."""
    return build_graph(
        ["P", "Q", "R", "S"],
        [("PQ", "P", "Q", 0.5), ("QS", "Q", "S", 0.5), ("RQ", "R", "Q", 1.0)],
    )


def star(lengths: Sequence[float]) -> WeightedGraph:
    """Star with center ``C`` and leaves ``l1 .. ln``; every edge starts at the center."""
    leaves = [f"l{i + 1}" for i in range(len(lengths))]
    return build_graph(
        ["C", *leaves],
        [(f"e{i + 1}", "C", leaf, L) for i, (leaf, L) in enumerate(zip(leaves, lengths))],
    )


def complete(n: int, length: float = 1.0) -> WeightedGraph:
    """Complete graph K_n with every edge of the same length."""
    if n < 2:
        raise InvalidArgument(f"K_n needs n >= 2, got {n}")
    names = [f"v{i}" for i in range(n)]
    edges: List[EdgeDescriptor] = []
    for i in range(n):
        for j in range(i + 1, n):
            edges.append((f"e{i}_{j}", names[i], names[j], length))
    return build_graph(names, edges)


def theta() -> WeightedGraph:
    """
    Three arcs between ``A`` and ``B``: one edge of length 1/2 and two paths
    of two edges of length 1/4 through ``C`` and ``D``.
    """
    return build_graph(
        ["A", "B", "C", "D"],
        [
            ("e1", "A", "B", 0.5),
            ("e2", "A", "C", 0.25),
            ("e3", "C", "B", 0.25),
            ("e4", "A", "D", 0.25),
            ("e5", "D", "B", 0.25),
        ],
    )


def lollipop() -> WeightedGraph:
    """Circle of length 1 with a tail of length 1/2 attached at ``v0``."""
    return build_graph(
        ["v0", "v1", "v2", "tip"],
        [
            ("e1", "v0", "v1", 1 / 3),
            ("e2", "v1", "v2", 1 / 3),
            ("e3", "v2", "v0", 1 / 3),
            ("tail", "v0", "tip", 0.5),
        ],
    )


def _length(rng: np.random.Generator) -> float:
    return float(rng.uniform(*LENGTH_RANGE))


def random_connected(
    rng: np.random.Generator,
    n_vertices: int,
    n_extra_edges: int = 0,
) -> WeightedGraph:
    """
    Random connected graph: a random spanning tree plus extra edges.

    Parameters
    ----------
    rng : numpy.random.Generator
    n_vertices : int
        Number of vertices, at least 2
    n_extra_edges : int, optional
        Edges added on top of the tree; fewer are added if the graph fills up.

    Returns
    -------
    WeightedGraph
        Edge lengths are uniform in ``LENGTH_RANGE``.
    """
    if n_vertices < 2:
        raise InvalidArgument(f"need at least 2 vertices, got {n_vertices}")
    names = [f"v{i}" for i in range(n_vertices)]
    edges: List[EdgeDescriptor] = []
    pairs: set[Tuple[int, int]] = set()
    for i in range(1, n_vertices):
        j = int(rng.integers(0, i))
        pairs.add((j, i))
        edges.append((f"e{len(edges) + 1}", names[j], names[i], _length(rng)))

    max_pairs = n_vertices * (n_vertices - 1) // 2
    target = min(max_pairs, len(pairs) + n_extra_edges)
    while len(pairs) < target:
        i, j = sorted(int(k) for k in rng.choice(n_vertices, size=2, replace=False))
        if (i, j) in pairs:
            continue
        pairs.add((i, j))
        edges.append((f"e{len(edges) + 1}", names[i], names[j], _length(rng)))
    return build_graph(names, edges)


def random_series_parallel(
    rng: np.random.Generator, n_steps: int
) -> Tuple[WeightedGraph, str, str]:
    """
    Random two-terminal series-parallel graph.

    Starts from one edge ``s - t`` and repeatedly either splits a random edge
    in two (series step) or adds a two-edge path alongside it (parallel step).

    Returns
    -------
    tuple[WeightedGraph, str, str]
        The graph and its two terminals ``s`` and ``t``.
    """
    vertices = ["s", "t"]
    edges: List[List] = [["e1", "s", "t", _length(rng)]]
    counter = 1
    for _ in range(n_steps):
        k = int(rng.integers(0, len(edges)))
        eid, u, v, _ = edges[k]
        w = f"w{len(vertices) - 1}"
        vertices.append(w)
        if rng.random() < 0.5:
            # series: u - w - v replaces u - v
            edges[k] = [eid, u, w, _length(rng)]
            counter += 1
            edges.append([f"e{counter}", w, v, _length(rng)])
        else:
            # parallel: u - w - v alongside u - v
            counter += 1
            edges.append([f"e{counter}", u, w, _length(rng)])
            counter += 1
            edges.append([f"e{counter}", w, v, _length(rng)])
    graph = build_graph(vertices, [tuple(e) for e in edges])  # type: ignore[misc]
    return graph, "s", "t"
