"""Matrix file format.

JSON: ``{"n": 2, "data": [0, 1, -1, 0]}`` (row-major).  A JSON object that
wraps a matrix under ``"B"``, ``"matrix"`` or ``"exp"`` is unwrapped, so the
output of one command can be piped into another.  Plain text is also
accepted: one row per line, whitespace-separated.
"""

from __future__ import annotations

import json
import math
import sys

import numpy as np

from .errors import DimensionError

_WRAPPERS = ("B", "matrix", "exp")


class MatrixFormatError(ValueError):
    code = "parse"


def matrix_to_obj(M) -> dict:
    M = np.asarray(M, dtype=float)
    # +0.0 normalizes negative zeros so output is stable across equivalent inputs
    return {"n": int(M.shape[0]), "data": [float(x) + 0.0 for x in M.ravel()]}


def obj_to_matrix(obj) -> np.ndarray:
    if isinstance(obj, dict):
        if "n" in obj and "data" in obj:
            n = obj["n"]
            data = obj["data"]
            if not isinstance(n, int) or n < 1:
                raise MatrixFormatError("'n' must be a positive integer")
            if len(data) != n * n:
                raise DimensionError(f"expected {n * n} entries, got {len(data)}")
            M = np.array(data, dtype=float).reshape(n, n)
            if not np.all(np.isfinite(M)):
                raise MatrixFormatError("matrix entries must be finite")
            return M
        for key in _WRAPPERS:
            if key in obj:
                return obj_to_matrix(obj[key])
    raise MatrixFormatError("JSON matrix must be an object with 'n' and 'data'")


def parse_matrix(text: str) -> np.ndarray:
    stripped = text.strip()
    if not stripped:
        raise MatrixFormatError("empty matrix input")
    if stripped[0] == "{":
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from None
        return obj_to_matrix(obj)
    rows = []
    for line in stripped.splitlines():
        if line.strip():
            try:
                rows.append([float(tok) for tok in line.split()])
            except ValueError as exc:
                raise MatrixFormatError(f"bad number in text matrix: {exc}") from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("text matrix must be square")
    M = np.array(rows, dtype=float)
    if not all(math.isfinite(x) for x in M.ravel()):
        raise MatrixFormatError("matrix entries must be finite")
    return M


def load_matrix(path: str, stdin=None) -> np.ndarray:
    if path == "-":
        return parse_matrix((stdin or sys.stdin).read())
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def dumps_matrix(M) -> str:
    return json.dumps(matrix_to_obj(M))
