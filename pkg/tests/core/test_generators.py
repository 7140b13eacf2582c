import networkx as nx
import numpy as np
import pytest

from metgraph.core.generators import (
    LENGTH_RANGE,
    complete,
    cycle,
    path,
    random_connected,
    random_series_parallel,
    star,
)
from metgraph.errors import InvalidArgument


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_complete_graph_size(n):
    g = complete(n)
    assert len(g.vertices) == n
    assert len(g.edges) == n * (n - 1) // 2


def test_cycle_needs_three_edges():
    with pytest.raises(InvalidArgument):
        cycle([0.5, 0.5])


def test_complete_needs_two_vertices():
    with pytest.raises(InvalidArgument):
        complete(1)


def test_path_names():
    g = path([1.0, 2.0])
    assert g.vertices == ("v0", "v1", "v2")
    assert [e.id for e in g.edges] == ["e1", "e2"]


def test_star_edges_start_at_center():
    g = star([0.1, 0.2, 0.3])
    assert all(e.u == "C" for e in g.edges)
    assert g.valence("C") == 3


def test_theta_total_length(theta_graph):
    assert theta_graph.total_length == pytest.approx(1.5)


def test_random_connected_is_connected(rng):
    for _ in range(10):
        g = random_connected(rng, 8, 4)
        assert nx.is_connected(g.to_networkx())
        assert len(g.edges) == 7 + 4
        assert all(LENGTH_RANGE[0] <= e.length <= LENGTH_RANGE[1] for e in g.edges)


def test_random_connected_caps_extra_edges(rng):
    g = random_connected(rng, 4, 100)
    assert len(g.edges) == 6


def test_random_connected_is_reproducible():
    a = random_connected(np.random.default_rng(3), 6, 3)
    b = random_connected(np.random.default_rng(3), 6, 3)
    assert a == b


def test_random_series_parallel_terminals(rng):
    g, s, t = random_series_parallel(rng, 6)
    assert (s, t) == ("s", "t")
    assert len(g.vertices) == 8
    assert nx.is_connected(g.to_networkx())
