"""Matrix file format: JSON with explicit [re, im] entry pairs, row major.

    {"version": "1", "dim_rows": 2, "dim_cols": 2,
     "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}
"""

from __future__ import annotations

import json
import math

import numpy as np


class MatrixFileError(ValueError):
    """Malformed matrix file; message carries position diagnostics."""


def load_matrix(path) -> np.ndarray:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFileError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise MatrixFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    return matrix_from_document(doc, source=str(path))


def matrix_from_document(doc, source: str = "<memory>") -> np.ndarray:
    if not isinstance(doc, dict):
        raise MatrixFileError(f"{source}: top level must be an object")
    if str(doc.get("version")) != "1":
        raise MatrixFileError(f"{source}: unsupported version {doc.get('version')!r}")
    try:
        rows = int(doc["dim_rows"])
        cols = int(doc["dim_cols"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"{source}: missing or malformed field ({exc})") from None
    if rows < 1 or cols < 1:
        raise MatrixFileError(f"{source}: dimensions must be positive")
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise MatrixFileError(
            f"{source}: expected {rows * cols} entries, found "
            f"{len(entries) if isinstance(entries, list) else 'non-list'}"
        )
    out = np.empty(rows * cols, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if (
            not isinstance(pair, (list, tuple))
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) for x in pair)
        ):
            raise MatrixFileError(f"{source}: entry {k} is not a [re, im] number pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFileError(f"{source}: entry {k} is not finite")
        out[k] = complex(re, im)
    return out.reshape(rows, cols)


def save_matrix(path, M) -> None:
    A = np.atleast_2d(np.asarray(M, dtype=np.complex128))
    doc = {
        "version": "1",
        "dim_rows": int(A.shape[0]),
        "dim_cols": int(A.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in A.reshape(-1)],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")
