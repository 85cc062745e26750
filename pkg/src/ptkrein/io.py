"""Matrix and vector files: JSON objects with ``[re, im]`` pairs at 17 significant digits."""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import PTKreinError

__all__ = [
    "MatrixFileError",
    "parse_matrix_file",
    "write_matrix_file",
    "parse_vector_file",
    "write_vector_file",
    "format_float",
    "dumps_matrix",
]


class MatrixFileError(PTKreinError, ValueError):
    pass


def format_float(x):
    """Lossless decimal text for a double; always carries a '.' or exponent so -0.0 survives."""
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def _pairs_text(values):
    return ", ".join(f"[{format_float(z.real)}, {format_float(z.imag)}]" for z in values)


def dumps_matrix(M):
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise MatrixFileError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise MatrixFileError("matrix has non-finite entries")
    return f'{{"n": {M.shape[0]}, "entries": [{_pairs_text(M.reshape(-1))}]}}\n'


def write_matrix_file(path, M):
    Path(path).write_text(dumps_matrix(M))


def write_vector_file(path, x):
    x = np.asarray(x, dtype=complex).reshape(-1)
    Path(path).write_text(f'{{"vector": [{_pairs_text(x)}]}}\n')


def _load(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise MatrixFileError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise MatrixFileError(f"{path}: top level must be an object")
    return path, obj


def _complex_list(path, key, items):
    if not isinstance(items, list):
        raise MatrixFileError(f"{path}: field '{key}' must be a list")
    out = []
    for i, item in enumerate(items):
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise MatrixFileError(f"{path}: {key}[{i}] must be a [re, im] pair of numbers")
        re, im = float(item[0]), float(item[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFileError(f"{path}: {key}[{i}] is not finite")
        out.append(complex(re, im))
    return out


def parse_matrix_file(path):
    """Read ``{"n": n, "entries": [[re, im], ...]}`` (row-major) into an ``n x n`` array."""
    path, obj = _load(path)
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise MatrixFileError(f"{path}: field 'n' must be a positive integer, got {n!r}")
    if "entries" not in obj:
        raise MatrixFileError(f"{path}: missing field 'entries'")
    entries = obj["entries"]
    if isinstance(entries, list) and len(entries) != n * n:
        raise MatrixFileError(f"{path}: 'entries' has length {len(entries)}, expected {n * n} for n = {n}")
    values = _complex_list(path, "entries", entries)
    return np.array(values, dtype=complex).reshape(n, n)


def parse_vector_file(path):
    path, obj = _load(path)
    if "vector" not in obj:
        raise MatrixFileError(f"{path}: missing field 'vector'")
    return np.array(_complex_list(path, "vector", obj["vector"]), dtype=complex)
