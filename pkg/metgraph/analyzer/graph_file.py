"""
Reader for the ``.graph`` text format.

One declaration per line, ``#`` starts a comment::

    vertex <name>
    edge <id> <u> <v> <length>

Declaration order fixes vertex indices and edge orientations.
"""

import logging
import math
import re
from typing import Dict, List, Tuple

from tqdm import tqdm

from ..constants import NAME_PATTERN
from ..core.weighted_graph import EdgeDescriptor, WeightedGraph, build_graph
from ..errors import (
    DuplicateName,
    GraphFileSyntaxError,
    LoopEdge,
    MultiEdge,
    NoEdges,
    NonpositiveLength,
    NoVertices,
    UnknownVertex,
)

logger = logging.getLogger(__name__)

_NAME_RE = re.compile(rf"^{NAME_PATTERN}$")
_LENGTH_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


def _name(token: str, what: str, line_no: int) -> str:
    if not _NAME_RE.match(token):
        raise GraphFileSyntaxError(line_no, f"invalid {what} {token!r}")
    return token


def _length(token: str, line_no: int) -> float:
    if not _LENGTH_RE.match(token):
        raise GraphFileSyntaxError(line_no, f"length {token!r} is not a decimal literal")
    return float(token)


def parse_graph_text(text: str, verbose: int = 0) -> WeightedGraph:
    """
    Parse graph declarations from a string.

    Parameters
    ----------
    text : str
        Contents of a ``.graph`` file
    verbose : int, optional
        Verbosity level. 0 for no output, 1 for a summary line, 2 adds a
        progress bar. Default is 0.

    Returns
    -------
    WeightedGraph

    Raises
    ------
    GraphFileSyntaxError
        For a line that is not a declaration.
    DuplicateName, UnknownVertex, LoopEdge, NonpositiveLength, MultiEdge
        Prefixed with the line of the offending declaration.
    NoVertices, NoEdges, Disconnected
        For the file as a whole.
    """
    vertices: List[str] = []
    vertex_lines: Dict[str, int] = {}
    edges: List[Tuple[int, EdgeDescriptor]] = []
    edge_lines: Dict[str, int] = {}

    lines = text.splitlines()
    if verbose >= 2:
        pbar = tqdm(desc="Reading declarations", unit=" lines", total=len(lines))
    for line_no, raw in enumerate(lines, start=1):
        if verbose >= 2:
            pbar.update(1)
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        keyword = tokens[0]

        if keyword == "vertex":
            if len(tokens) != 2:
                raise GraphFileSyntaxError(line_no, "expected 'vertex <name>'")
            name = _name(tokens[1], "vertex name", line_no)
            if name in vertex_lines:
                raise DuplicateName(
                    f"line {line_no}: vertex {name!r} already declared on line {vertex_lines[name]}"
                )
            vertex_lines[name] = line_no
            vertices.append(name)
        elif keyword == "edge":
            if len(tokens) != 5:
                raise GraphFileSyntaxError(line_no, "expected 'edge <id> <u> <v> <length>'")
            eid = _name(tokens[1], "edge id", line_no)
            u = _name(tokens[2], "vertex name", line_no)
            v = _name(tokens[3], "vertex name", line_no)
            length = _length(tokens[4], line_no)
            if eid in edge_lines:
                raise DuplicateName(
                    f"line {line_no}: edge {eid!r} already declared on line {edge_lines[eid]}"
                )
            edge_lines[eid] = line_no
            edges.append((line_no, (eid, u, v, length)))
        else:
            raise GraphFileSyntaxError(line_no, f"unknown declaration {keyword!r}")
    if verbose >= 2:
        pbar.close()

    if not vertices:
        raise NoVertices("graph file declares no vertices")
    if not edges:
        raise NoEdges(f"graph file declares no edges; vertex {vertices[0]!r} spans nothing")

    # Edges may name vertices declared further down, so these checks wait for the whole file
    pairs: Dict[frozenset, str] = {}
    for line_no, (eid, u, v, length) in edges:
        for end in (u, v):
            if end not in vertex_lines:
                raise UnknownVertex(f"line {line_no}: edge {eid!r} uses unknown vertex {end!r}")
        if u == v:
            raise LoopEdge(f"line {line_no}: edge {eid!r} is a loop at vertex {u!r}")
        if not (math.isfinite(length) and length > 0):
            raise NonpositiveLength(f"line {line_no}: edge {eid!r} has nonpositive length {length!r}")
        pair = frozenset((u, v))
        if pair in pairs:
            raise MultiEdge(
                f"line {line_no}: edge {eid!r} joins {u!r} and {v!r} like edge {pairs[pair]!r}"
            )
        pairs[pair] = eid

    g = build_graph(vertices, [descriptor for _, descriptor in edges])
    if verbose >= 1:
        print(f"Parsed {len(g.vertices)} vertices and {len(g.edges)} edges")
    logger.debug("parsed graph with %d vertices, %d edges", len(g.vertices), len(g.edges))
    return g


def parse_graph_file(file_path: str, verbose: int = 0) -> WeightedGraph:
    """
    Parse a ``.graph`` file.

    Parameters
    ----------
    file_path : str
        Path to the file, read as UTF-8
    verbose : int, optional
        See :func:`parse_graph_text`. Default is 0.

    Returns
    -------
    WeightedGraph
    """
    with open(file_path, "r", encoding="utf-8") as f:
        text = f.read()
    if verbose >= 1:
        print(f"Graph file: {file_path}")
    return parse_graph_text(text, verbose=verbose)
