"""
Deterministic CSV reports.

Every table is built as a polars frame of preformatted strings and written
unquoted with LF line endings, so identical inputs give identical bytes.
"""

import io
from typing import Dict, List, Mapping, Optional

import polars as pl

from ..calculus.measure import Atom, GraphMeasure
from ..calculus.piecewise_poly import PiecewisePolyFunction
from ..constants import format_number
from ..core.queries import format_point, parse_point
from ..core.weighted_graph import WeightedGraph
from ..errors import InvalidArgument
from ..utils.spectral import Spectrum


def _write(columns: Dict[str, List[Optional[str]]]) -> str:
    df = pl.DataFrame(columns, schema={name: pl.Utf8 for name in columns})
    return df.write_csv(quote_style="never", line_terminator="\n", null_value="")


def _coefficient_columns(width: int) -> List[str]:
    return [f"c{i}" for i in range(max(width, 1))]


def measure_csv(mu: GraphMeasure) -> str:
    """
    Write a measure as ``kind,location,c0,c1,...``.

    Atoms come first in canonical point order as ``atom,<point>,<mass>``,
    then densities in edge order as ``density,<edge>,<c0>,<c1>,...``.
    Coefficient columns are as many as the highest density degree needs.

    Parameters
    ----------
    mu : GraphMeasure

    Returns
    -------
    str

    Examples
    --------
    The canonical measure of a circle made of three edges::

        kind,location,c0
        density,e1,1
        density,e2,1
        density,e3,1
    """
    g = mu.graph
    width = max((len(c) for c in mu.densities.values()), default=1)
    coeff_cols = _coefficient_columns(width)
    columns: Dict[str, List[Optional[str]]] = {"kind": [], "location": []}
    columns.update({name: [] for name in coeff_cols})

    for atom in mu.atoms:
        columns["kind"].append("atom")
        columns["location"].append(format_point(g, atom.point))
        columns["c0"].append(format_number(atom.mass))
        for name in coeff_cols[1:]:
            columns[name].append(None)

    for e in g.edges:
        coef = mu.densities.get(e.id)
        if coef is None:
            continue
        columns["kind"].append("density")
        columns["location"].append(e.id)
        for i, name in enumerate(coeff_cols):
            columns[name].append(format_number(coef[i]) if i < len(coef) else None)
    return _write(columns)


def read_measure_csv(g: WeightedGraph, text: str) -> GraphMeasure:
    """
    Read a measure written by :func:`measure_csv` back onto ``g``.

    Parameters
    ----------
    g : WeightedGraph
        Model the locations refer to
    text : str
        CSV text

    Returns
    -------
    GraphMeasure

    Raises
    ------
    InvalidArgument
        For an unknown row kind or a missing ``c0`` column.
    """
    df = pl.read_csv(io.BytesIO(text.encode("utf-8")), infer_schema_length=0)
    coeff_cols = [c for c in df.columns if c.startswith("c") and c[1:].isdigit()]
    coeff_cols.sort(key=lambda c: int(c[1:]))
    if "c0" not in coeff_cols:
        raise InvalidArgument("measure CSV has no c0 column")

    atoms: List[Atom] = []
    densities: Dict[str, List[float]] = {}
    for row in df.iter_rows(named=True):
        kind = row["kind"]
        if kind == "atom":
            atoms.append(Atom(point=parse_point(g, row["location"]), mass=float(row["c0"])))
        elif kind == "density":
            g[row["location"]]  # raises UnknownEdge
            densities[row["location"]] = [
                float(row[c]) for c in coeff_cols if row[c] not in (None, "")
            ]
        else:
            raise InvalidArgument(f"unknown measure row kind {kind!r}")
    return GraphMeasure(graph=g, atoms=atoms, densities=densities)


def function_csv(f: PiecewisePolyFunction) -> str:
    """
    Write a piecewise polynomial as ``edge,c0,c1,...``, one row per edge of its model.

    Coefficients are in powers of the arclength from each edge's first endpoint.
    """
    width = max(len(f.coefficients[e.id]) for e in f.graph.edges)
    coeff_cols = _coefficient_columns(max(width, 2))
    columns: Dict[str, List[Optional[str]]] = {"edge": []}
    columns.update({name: [] for name in coeff_cols})
    for e in f.graph.edges:
        coef = f.coefficients[e.id]
        columns["edge"].append(e.id)
        for i, name in enumerate(coeff_cols):
            columns[name].append(format_number(coef[i]) if i < len(coef) else "0")
    return _write(columns)


def currents_csv(currents: Mapping[str, float]) -> str:
    """Write ``edge,current`` rows in the order given."""
    return _write(
        {
            "edge": list(currents.keys()),
            "current": [format_number(c) for c in currents.values()],
        }
    )


def spectrum_csv(spec: Spectrum) -> str:
    """Write ``n,lambda`` rows, ``n`` counting from 1."""
    return _write(
        {
            "n": [str(n) for n in range(1, len(spec) + 1)],
            "lambda": [format_number(lam) for lam in spec.eigenvalues],
        }
    )


def eigenvector_csv(spec: Spectrum) -> str:
    """
    Write ``n,point,value`` rows for every eigenfunction at every fine vertex.

    Points are given on the host model, so they read the same whatever the
    mesh step.
    """
    back = spec.remap.inverse()
    points = [format_point(spec.graph, back(spec.fine.vertex_point(v))) for v in spec.fine.vertices]
    columns: Dict[str, List[Optional[str]]] = {"n": [], "point": [], "value": []}
    for n, row in enumerate(spec.eigenvectors, start=1):
        for point, value in zip(points, row):
            columns["n"].append(str(n))
            columns["point"].append(point)
            columns["value"].append(format_number(float(value)))
    return _write(columns)
