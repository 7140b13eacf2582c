from pathlib import Path

import pytest

import metgraph

DATA_DIR = Path(metgraph.__file__).parent / "data"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def data_file():
    """Path of a bundled example graph by stem."""

    def _path(name: str) -> str:
        return str(DATA_DIR / f"{name}.graph")

    return _path


@pytest.fixture
def graph_file(tmp_path):
    """Write graph text to a temporary .graph file and return its path."""

    def _write(text: str, name: str = "model.graph") -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


@pytest.fixture
def golden():
    def _read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text()

    return _read
