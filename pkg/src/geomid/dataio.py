"""Matrix ingestion (CSV, GDM1 binary) and report serialization.

GDM1 layout: ``b"GDM1"``, rows (u64 LE), cols (u64 LE), then ``rows * cols``
IEEE-754 binary64 little-endian values in row-major order.

All floats in reports are written with 17 significant digits; infinite
values are ``inf`` in CSV and ``null`` (with an ``infinite`` flag) in JSON.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import struct
import sys
import tempfile
from pathlib import Path
from typing import Iterable, List, Sequence

import numpy as np

from geomid.core import DatasetMatrix, IdEstimate
from geomid.features import FeatureScore, NidCurve
from geomid.selection import SelectionPlan

MAGIC = b"GDM1"
_HEADER = struct.Struct("<4sQQ")


class DataError(ValueError):
    """Malformed or non-finite input data."""


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


# -- CSV ---------------------------------------------------------------------

def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def parse_csv(text: str, source: str = "<string>") -> DatasetMatrix:
    rows = [[c.strip() for c in row] for row in csv.reader(io.StringIO(text))]
    lines = [(i + 1, row) for i, row in enumerate(rows) if any(row)]
    if not lines:
        raise DataError(f"{source}: empty file")
    names = None
    if not all(_is_number(c) for c in lines[0][1]):
        names = tuple(lines[0][1])
        lines = lines[1:]
        if not lines:
            raise DataError(f"{source}: header row but no data")
    width = len(names) if names is not None else len(lines[0][1])
    values = np.empty((len(lines), width))
    for r, (lineno, row) in enumerate(lines):
        if len(row) != width:
            raise DataError(f"{source}: line {lineno} has {len(row)} cells, expected {width}")
        for c, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise DataError(
                    f"{source}: non-numeric cell {cell!r} at line {lineno}, column {c}"
                ) from None
            if not math.isfinite(v):
                raise DataError(
                    f"{source}: non-finite value {cell!r} at line {lineno}, column {c}"
                )
            values[r, c] = v
    return DatasetMatrix(values, names)


def read_csv(path) -> DatasetMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_csv(fh.read(), str(path))


def matrix_to_csv(data: DatasetMatrix) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if data.names is not None:
        w.writerow(data.names)
    for row in data.values:
        w.writerow([fmt_float(v) for v in row])
    return out.getvalue()


def write_csv(data: DatasetMatrix, path) -> None:
    atomic_write(path, matrix_to_csv(data).encode("utf-8"))


# -- binary ------------------------------------------------------------------

def matrix_to_bytes(data: DatasetMatrix) -> bytes:
    v = data.values
    return _HEADER.pack(MAGIC, v.shape[0], v.shape[1]) + v.astype("<f8").tobytes(order="C")


def parse_binary(blob: bytes, source: str = "<bytes>") -> DatasetMatrix:
    if len(blob) < _HEADER.size:
        raise DataError(f"{source}: truncated header ({len(blob)} bytes)")
    magic, rows, cols = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise DataError(f"{source}: bad magic {magic!r}, expected {MAGIC!r}")
    if rows < 1 or cols < 1:
        raise DataError(f"{source}: invalid shape {rows}x{cols}")
    payload = len(blob) - _HEADER.size
    expected = rows * cols * 8
    if payload < expected:
        raise DataError(f"{source}: truncated payload, {payload} of {expected} bytes")
    if payload > expected:
        raise DataError(f"{source}: {payload - expected} trailing bytes after payload")
    values = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size).reshape(rows, cols)
    bad = np.argwhere(~np.isfinite(values))
    if bad.size:
        r, c = bad[0]
        raise DataError(f"{source}: non-finite value at row {r}, column {c}")
    return DatasetMatrix(values.astype(np.float64))


def read_binary(path) -> DatasetMatrix:
    return parse_binary(Path(path).read_bytes(), str(path))


def write_binary(data: DatasetMatrix, path) -> None:
    atomic_write(path, matrix_to_bytes(data))


def guess_format(path) -> str:
    return "csv" if str(path).lower().endswith(".csv") else "bin"


def read_matrix(path, fmt: str | None = None) -> DatasetMatrix:
    fmt = fmt or guess_format(path)
    if fmt == "csv":
        return read_csv(path)
    if fmt == "bin":
        return read_binary(path)
    raise ValueError(f"unknown matrix format {fmt!r}")


def write_matrix(data: DatasetMatrix, path, fmt: str | None = None) -> None:
    fmt = fmt or guess_format(path)
    if fmt == "csv":
        write_csv(data, path)
    elif fmt == "bin":
        write_binary(data, path)
    else:
        raise ValueError(f"unknown matrix format {fmt!r}")


# -- output ------------------------------------------------------------------

def atomic_write(path, payload: bytes) -> None:
    """Write via a temporary sibling file and rename; ``-`` means stdout."""
    if str(path) == "-":
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        return
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_json(obj) -> str:
    """JSON with 17-significant-digit floats and non-finite floats as ``null``."""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return "null" if not math.isfinite(obj) else "%.17g" % obj
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{dumps_json(str(k))}: {dumps_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def estimate_record(est: IdEstimate) -> dict:
    return {
        "method": est.method,
        "delta_lower": est.delta_lower,
        "delta_upper": est.delta_upper,
        "id_lower": est.id_lower,
        "id_upper": est.id_upper,
        "id_mid": est.id_mid,
        "infinite": est.infinite,
    }


SCORE_FIELDS = ("feature_index", "name", "delta_star", "delta_norm", "nid", "infinite",
                "approximated", "nid_lower", "nid_upper")
CURVE_FIELDS = ("rank", "rel_rank", "feature_index", "nid", "rel_nid")


def score_records(scores: Sequence[FeatureScore], names: Sequence[str] | None = None) -> List[dict]:
    return [
        {
            "feature_index": sc.index,
            "name": names[sc.index] if names is not None else f"f{sc.index}",
            "delta_star": sc.delta_star,
            "delta_norm": sc.delta_norm,
            "nid": sc.nid,
            "infinite": sc.infinite,
            "approximated": sc.approximated,
            "nid_lower": sc.nid_lower,
            "nid_upper": sc.nid_upper,
        }
        for sc in scores
    ]


def curve_records(curve: NidCurve) -> List[dict]:
    return [
        {
            "rank": p.rank,
            "rel_rank": p.rel_rank,
            "feature_index": p.feature_index,
            "nid": p.nid,
            "rel_nid": p.rel_nid,
        }
        for p in curve.points
    ]


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def records_to_csv(records: Iterable[dict], fields: Sequence[str]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for rec in records:
        w.writerow([_csv_cell(rec[f]) for f in fields])
    return out.getvalue()


def render_report(result, fmt: str = "json", names: Sequence[str] | None = None) -> str:
    """Serialize an estimate, score list, curve, plan or sweep result."""
    from geomid.sweep import SWEEP_FIELDS, SweepResult

    if fmt not in ("json", "csv"):
        raise ValueError(f"unknown report format {fmt!r}")
    if isinstance(result, IdEstimate):
        rec = estimate_record(result)
        return dumps_json(rec) + "\n" if fmt == "json" else records_to_csv([rec], list(rec))
    if isinstance(result, NidCurve):
        recs = curve_records(result)
        if fmt == "csv":
            return records_to_csv(recs, CURVE_FIELDS)
        return dumps_json({"clamped_infinite": result.clamped_infinite, "points": recs}) + "\n"
    if isinstance(result, SelectionPlan):
        if fmt == "csv":
            raise ValueError("selection plans serialize as JSON only")
        return dumps_json(result.to_dict()) + "\n"
    if isinstance(result, SweepResult):
        recs = result.records()
        return records_to_csv(recs, SWEEP_FIELDS) if fmt == "csv" else dumps_json(recs) + "\n"
    if isinstance(result, (list, tuple)) and all(isinstance(x, FeatureScore) for x in result):
        recs = score_records(result, names)
        return records_to_csv(recs, SCORE_FIELDS) if fmt == "csv" else dumps_json(recs) + "\n"
    raise TypeError(f"cannot render {type(result).__name__}")


def write_report(result, path, fmt: str = "json", names: Sequence[str] | None = None) -> None:
    atomic_write(path, render_report(result, fmt, names).encode("utf-8"))
