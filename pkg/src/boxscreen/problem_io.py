"""File ingestion and serialization of problem instances.

The matrix is accepted in Matrix Market format (array or coordinate, the
latter densified on load) or as a headerless CSV; the data vector as a
one-column CSV. Bounds come either from the shorthand specs ``nn`` /
``box:lo:hi`` or from a two-column CSV where the token ``inf`` is allowed
in the upper column.
"""

import os

import numpy as np
import scipy.io
import scipy.sparse

from .errors import DimensionMismatch, ParseError, ZeroColumn, ZeroRow
from .model import Problem

FLOAT_FMT = "%.17g"


def _read_matrix(path):
    if str(path).endswith((".mtx", ".mm")):
        try:
            a = scipy.io.mmread(path)
        except Exception as exc:
            raise ParseError(f"{path}: invalid Matrix Market file: {exc}")
        if scipy.sparse.issparse(a):
            a = a.toarray()
        return np.asarray(a, dtype=float)
    return _read_csv_array(path)


def _read_csv_array(path, ncols=None):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            vals = []
            for colno, tok in enumerate(fields, start=1):
                tok = tok.strip()
                try:
                    vals.append(np.inf if tok.lower() in ("inf", "+inf", "infinity")
                                else float(tok))
                except ValueError:
                    raise ParseError(
                        f"{path}: line {lineno}, column {colno}: "
                        f"cannot parse {tok!r} as a number")
            if ncols is not None and len(vals) != ncols:
                raise ParseError(
                    f"{path}: line {lineno}: expected {ncols} fields, "
                    f"got {len(vals)}")
            if rows and len(vals) != len(rows[0]):
                raise ParseError(
                    f"{path}: line {lineno}: ragged row ({len(vals)} fields, "
                    f"previous rows have {len(rows[0])})")
            rows.append(vals)
    if not rows:
        raise ParseError(f"{path}: empty file")
    return np.asarray(rows, dtype=float)


def _parse_bounds(bounds_spec, n):
    if bounds_spec == "nn":
        return np.zeros(n), np.full(n, np.inf)
    if isinstance(bounds_spec, str) and bounds_spec.startswith("box:"):
        parts = bounds_spec.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad bounds spec {bounds_spec!r}; want box:lo:hi")
        try:
            lo, hi = float(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError(f"bad bounds spec {bounds_spec!r}: non-numeric limit")
        return np.full(n, lo), np.full(n, hi)
    if isinstance(bounds_spec, str) and os.path.exists(bounds_spec):
        arr = _read_csv_array(bounds_spec, ncols=2)
        if arr.shape[0] != n:
            raise DimensionMismatch(
                f"bounds file has {arr.shape[0]} rows, expected {n}")
        return arr[:, 0], arr[:, 1]
    raise ParseError(f"bad bounds spec {bounds_spec!r}; want 'nn', "
                     "'box:lo:hi' or an existing CSV path")


def load_problem(path_a, path_y, bounds_spec, normalize_columns=False):
    """Read, validate and assemble a Problem from files."""
    a = _read_matrix(path_a)
    if a.ndim != 2:
        raise ParseError(f"{path_a}: expected a 2-d matrix")
    y = _read_csv_array(path_y, ncols=1).ravel()
    if y.shape[0] != a.shape[0]:
        raise DimensionMismatch(
            f"y has length {y.shape[0]}, matrix has {a.shape[0]} rows")
    col_norms = np.linalg.norm(a, axis=0)
    zero_cols = np.flatnonzero(col_norms == 0.0)
    if zero_cols.size:
        raise ZeroColumn(f"{path_a}: all-zero column(s) {zero_cols.tolist()}")
    row_norms = np.linalg.norm(a, axis=1)
    zero_rows = np.flatnonzero(row_norms == 0.0)
    if zero_rows.size:
        raise ZeroRow(f"{path_a}: all-zero row(s) {zero_rows.tolist()}")
    if normalize_columns:
        a = a / col_norms
    lower, upper = _parse_bounds(bounds_spec, a.shape[1])
    return Problem(a, y, lower, upper)


def save_problem(p, prefix):
    """Write <prefix>_A.mtx, <prefix>_y.csv and <prefix>_bounds.csv."""
    path_a = f"{prefix}_A.mtx"
    path_y = f"{prefix}_y.csv"
    path_b = f"{prefix}_bounds.csv"
    scipy.io.mmwrite(path_a, p.a_matrix)
    np.savetxt(path_y, p.y[:, None], fmt=FLOAT_FMT, delimiter=",")
    with open(path_b, "w") as fh:
        for lo, hi in zip(p.lower, p.upper):
            hi_tok = "inf" if np.isinf(hi) else FLOAT_FMT % hi
            fh.write((FLOAT_FMT % lo) + "," + hi_tok + "\n")
    return path_a, path_y, path_b
