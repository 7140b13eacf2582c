import textwrap

import pytest

from metgraph.analyzer.graph_file import parse_graph_file, parse_graph_text
from metgraph.errors import (
    Disconnected,
    DuplicateName,
    GraphFileSyntaxError,
    LoopEdge,
    MultiEdge,
    NoEdges,
    NonpositiveLength,
    NoVertices,
    UnknownVertex,
)


def test_parse_star(data_file):
    g = parse_graph_file(data_file("star"))
    assert g.vertices == ("P", "Q", "R", "S")
    assert [e.id for e in g.edges] == ["PQ", "QS", "RQ"]
    assert g["RQ"].length == 1.0


@pytest.mark.parametrize(
    "name, n_vertices, n_edges",
    [
        pytest.param("segment", 2, 1, id="segment"),
        pytest.param("circle", 3, 3, id="circle"),
        pytest.param("star", 4, 3, id="star"),
        pytest.param("k4", 4, 6, id="k4"),
        pytest.param("theta", 4, 5, id="theta"),
    ],
)
def test_bundled_corpus(data_file, name, n_vertices, n_edges):
    g = parse_graph_file(data_file(name))
    assert len(g.vertices) == n_vertices
    assert len(g.edges) == n_edges


def test_comments_blank_lines_and_forward_references():
    text = textwrap.dedent(
        """\
        # header

        edge e1 A B 2.5e-1   # B is declared below
        vertex A
        vertex B
        """
    )
    g = parse_graph_text(text)
    assert g.vertices == ("A", "B")
    assert g["e1"].length == 0.25


def test_verbose(capsys, graph_file):
    parse_graph_file(graph_file("vertex A\nvertex B\nedge e1 A B 1\n"), verbose=1)
    out = capsys.readouterr().out
    assert "Graph file:" in out
    assert "Parsed 2 vertices and 1 edges" in out


def test_empty_file():
    with pytest.raises(NoVertices):
        parse_graph_text("# nothing here\n")


def test_lone_vertex_file():
    with pytest.raises(NoEdges, match="'A'"):
        parse_graph_text("vertex A\n")


@pytest.mark.parametrize(
    "text, error, line",
    [
        pytest.param("vertex A\nedge e1 A A 1\n", LoopEdge, 2, id="loop"),
        pytest.param("vertex A\nvertex A\n", DuplicateName, 2, id="duplicate-vertex"),
        pytest.param(
            "vertex A\nvertex B\nedge e1 A B 1\nedge e1 B A 1\n", DuplicateName, 4, id="duplicate-edge"
        ),
        pytest.param("vertex A\nedge e1 A Z 1\n", UnknownVertex, 2, id="unknown-vertex"),
        pytest.param("vertex A\nvertex B\nedge e1 A B 0\n", NonpositiveLength, 3, id="zero-length"),
        pytest.param("vertex A\nvertex B\nedge e1 A B -1\n", NonpositiveLength, 3, id="negative-length"),
        pytest.param(
            "vertex A\nvertex B\nedge e1 A B 1\nedge e2 B A 2\n", MultiEdge, 4, id="multi-edge"
        ),
    ],
)
def test_declaration_errors(text, error, line):
    with pytest.raises(error, match=f"line {line}:"):
        parse_graph_text(text)


@pytest.mark.parametrize(
    "text",
    [
        pytest.param("vertex\n", id="missing-name"),
        pytest.param("vertex A B\n", id="extra-token"),
        pytest.param("vertex A-1\n", id="bad-name"),
        pytest.param("vertex A\nvertex B\nedge e1 A B\n", id="missing-length"),
        pytest.param("vertex A\nvertex B\nedge e1 A B one\n", id="bad-length"),
        pytest.param("vertex A\nvertex B\nedge e1 A B inf\n", id="infinite-length"),
        pytest.param("node A\n", id="unknown-keyword"),
    ],
)
def test_syntax_errors(text):
    with pytest.raises(GraphFileSyntaxError) as exc_info:
        parse_graph_text(text)
    assert exc_info.value.line >= 1


def test_disconnected():
    with pytest.raises(Disconnected):
        parse_graph_text("vertex A\nvertex B\nvertex C\nedge e1 A B 1\n")
