"""CSV ingestion and emission for curves, datasets, matrices and reports."""

import csv
import io
import json
import math
import os
import sys

import numpy as np

from .core import ErrorCurve
from .errors import CurveError


class CurveFileError(CurveError):
    def __init__(self, path, lineno, msg):
        self.path = path
        self.lineno = lineno
        where = f"{path}:{lineno}" if lineno else str(path)
        super().__init__(f"{where}: {msg}")


def _open_text(path):
    if path in (None, "-"):
        return sys.stdin
    return open(path, newline="")


def _rows(handle):
    """Yield ``(lineno, fields)`` skipping blank lines and ``#`` comments."""
    for lineno, line in enumerate(handle, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        yield lineno, [f.strip() for f in next(csv.reader([text]))]


def _float(text, path, lineno):
    try:
        x = float(text)
    except ValueError:
        raise CurveFileError(path, lineno, f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise CurveFileError(path, lineno, f"non-finite value {text!r}")
    return x


def read_curve_csv(path) -> ErrorCurve:
    """Read a ``k,V`` curve file with contiguous ``k = 0..K``."""
    name = "<stdin>" if path in (None, "-") else path
    handle = _open_text(path)
    try:
        rows = list(_rows(handle))
    finally:
        if handle is not sys.stdin:
            handle.close()
    if not rows:
        raise CurveFileError(name, 0, "empty curve file")
    lineno, header = rows[0]
    if [h.lower() for h in header] != ["k", "v"]:
        raise CurveFileError(name, lineno, f"expected header 'k,V', got {','.join(header)!r}")
    values = []
    for lineno, fields in rows[1:]:
        if len(fields) != 2:
            raise CurveFileError(name, lineno, f"expected 2 fields, got {len(fields)}")
        try:
            k = int(fields[0])
        except ValueError:
            raise CurveFileError(name, lineno, f"k must be an integer, got {fields[0]!r}") from None
        if k != len(values):
            raise CurveFileError(name, lineno, f"expected k={len(values)}, got k={k}")
        values.append(_float(fields[1], name, lineno))
    if not values:
        raise CurveFileError(name, 0, "curve file has no data rows")
    return ErrorCurve(values)


def format_curve_csv(curve) -> str:
    values = curve.values if isinstance(curve, ErrorCurve) else np.asarray(curve, dtype=float)
    out = io.StringIO()
    out.write("k,V\n")
    for k, v in enumerate(values):
        # repr gives the shortest string that round-trips exactly
        out.write(f"{k},{float(v)!r}\n")
    return out.getvalue()


def write_curve_csv(curve, path=None) -> None:
    text = format_curve_csv(curve)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def read_matrix_csv(path, allow_header: bool = True):
    """Numeric matrix, one row per line; an optional first header row is skipped.

    Returns ``(matrix, header)`` where ``header`` is ``None`` if absent.
    """
    name = "<stdin>" if path in (None, "-") else path
    handle = _open_text(path)
    try:
        rows = list(_rows(handle))
    finally:
        if handle is not sys.stdin:
            handle.close()
    if not rows:
        raise CurveFileError(name, 0, "empty file")
    header = None
    lineno, first = rows[0]
    try:
        [float(f) for f in first]
    except ValueError:
        if not allow_header:
            raise CurveFileError(name, lineno, "unexpected header row") from None
        header = first
        rows = rows[1:]
    width = len(header) if header else len(rows[0][1]) if rows else 0
    data = []
    for lineno, fields in rows:
        if len(fields) != width:
            raise CurveFileError(name, lineno, f"expected {width} fields, got {len(fields)}")
        data.append([_float(f, name, lineno) for f in fields])
    if not data:
        raise CurveFileError(name, 0, "no data rows")
    return np.array(data, dtype=np.float64), header


def read_dataset_csv(path, target: str):
    """Dataset with the named target column; remaining columns keep file order."""
    from .builders.regression import Dataset

    matrix, header = read_matrix_csv(path)
    if header is None:
        raise CurveFileError(path, 1, "dataset CSV needs a header row")
    if target not in header:
        raise CurveFileError(path, 1, f"target column {target!r} not found")
    t = header.index(target)
    feats = [i for i in range(len(header)) if i != t]
    return Dataset(matrix[:, t], matrix[:, feats], [header[i] for i in feats])


def write_json(report, path) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")


def write_plot_series(report, directory) -> list:
    """One CSV per panel: the curve, the weights and the cumulative weights."""
    os.makedirs(directory, exist_ok=True)
    K = report.K
    series = {
        "curve.csv": ("k,V", range(K + 1), report.curve),
        "weights.csv": ("k,w", range(K + 1), report.spectrum.weights),
        "cumulative.csv": ("k,W", range(1, K + 1), report.cumulative),
    }
    written = []
    for fname, (header, ks, ys) in series.items():
        target = os.path.join(directory, fname)
        with open(target, "w", newline="") as fh:
            fh.write(header + "\n")
            for k, y in zip(ks, ys):
                fh.write(f"{k},{float(y)!r}\n")
        written.append(target)
    return written
