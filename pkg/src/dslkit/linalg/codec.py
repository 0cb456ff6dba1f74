"""Matrix JSON documents: ``{"n": int, "rows": [[...]], "kind": "sym" | "spacetime"}``.

``n`` is the number of rows. A space-time matrix of space dimension ``k`` is
therefore stored with ``n = k + 1``. ``kind`` defaults to ``spacetime``.
"""

from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from ..core.exceptions import MatrixFormatError
from ..core.io import read_json, validate_document
from .matrices import SpaceTimeMatrix, SymMatrix

__all__ = ["matrix_from_document", "matrix_to_document", "load_matrix"]

Matrix = Union[SymMatrix, SpaceTimeMatrix]


def matrix_from_document(doc: Dict[str, Any], source: str = "<memory>") -> Matrix:
    """Parse a validated matrix document, rejecting any asymmetry."""
    validate_document(doc, "matrix", MatrixFormatError, source=source)
    n = int(doc["n"])
    rows = doc["rows"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise MatrixFormatError(
            f"{source}: rows must form an {n}x{n} array",
            context={"path": source, "value_name": "n", "value": str(n)},
        )
    entries = np.asarray(rows, dtype=float)
    kind = doc.get("kind", "spacetime")
    if kind == "sym":
        return SymMatrix(entries)
    return SpaceTimeMatrix.from_full(entries)


def matrix_to_document(a: Matrix) -> Dict[str, Any]:
    if isinstance(a, SpaceTimeMatrix):
        return {"n": a.n + 1, "kind": "spacetime", "rows": a.tolist()}
    return {"n": a.n, "kind": "sym", "rows": a.tolist()}


def load_matrix(path: Union[str, Path]) -> Matrix:
    """Read and parse a matrix JSON file."""
    doc = read_json(path, error_cls=MatrixFormatError)
    return matrix_from_document(doc, source=str(path))
