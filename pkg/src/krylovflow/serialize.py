"""CSV/JSON artifact formats.

All CSV files use 17-significant-digit decimal floats, '.' decimal
separator and LF line endings, so identical inputs reproduce byte-identical
artifacts on any platform. Structurally absent cells (the last coupling of
a chain) are written as empty fields and read back as NaN.
"""
import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, SchemaMismatch
from .krylov import TridiagonalOperator
from .measure import SpectralMeasure
from .observables import TimeSeries


def _fmt(x):
    x = float(x)
    if math.isnan(x):
        return ""
    return f"{x:.17g}"


def _open_write(path):
    return open(path, "w", newline="", encoding="utf-8")


def _write_rows(path, header, rows):
    with _open_write(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_measure_csv(path, m):
    _write_rows(path, ("energy", "log_weight"),
                ((_fmt(e), _fmt(lw)) for e, lw in zip(m.energies, m.log_weights)))


def read_measure_csv(path):
    cols, data = read_table(path)
    if cols != ["energy", "log_weight"]:
        raise SchemaMismatch(f"{path}: not a measure file (columns {cols})")
    return SpectralMeasure(data[:, 0], data[:, 1])


def write_chain_csv(path, t_op):
    b_pad = np.concatenate([t_op.b, [math.nan]])
    _write_rows(path, ("n", "a", "b"),
                ((str(n), _fmt(a), _fmt(b))
                 for n, (a, b) in enumerate(zip(t_op.a, b_pad))))


def read_chain_csv(path):
    cols, data = read_table(path)
    if cols != ["n", "a", "b"]:
        raise SchemaMismatch(f"{path}: not a chain file (columns {cols})")
    return TridiagonalOperator(data[:, 1], data[:-1, 2])


def write_state_csv(path, state):
    amp = state.amplitudes
    _write_rows(path, ("n", "re", "im"),
                ((str(n), _fmt(z.real), _fmt(z.imag)) for n, z in enumerate(amp)))


def write_timeseries_csv(path, ts):
    if ts.is_complex:
        _write_rows(path, ("t", "re", "im"),
                    ((_fmt(t), _fmt(v.real), _fmt(v.imag))
                     for t, v in zip(ts.times, ts.values)))
    else:
        _write_rows(path, ("t", "value"),
                    ((_fmt(t), _fmt(v)) for t, v in zip(ts.times, ts.values)))


def read_timeseries_csv(path, label=""):
    cols, data = read_table(path)
    if cols == ["t", "value"]:
        return TimeSeries(data[:, 0], data[:, 1], label)
    if cols == ["t", "re", "im"]:
        return TimeSeries(data[:, 0], data[:, 1] + 1j * data[:, 2], label)
    raise SchemaMismatch(f"{path}: not a time-series file (columns {cols})")


def write_trajectory_csv(path, taus, operators):
    """Long-format chains along a flow: one row per (waypoint, level)."""
    if len(taus) != len(operators):
        raise InvalidParameter("one operator per waypoint required")

    def rows():
        for tau, t_op in zip(taus, operators):
            b_pad = np.concatenate([t_op.b, [math.nan]])
            for n in range(t_op.d):
                yield (_fmt(tau.tau1), _fmt(tau.tau2), str(n),
                       _fmt(t_op.a[n]), _fmt(b_pad[n]))

    _write_rows(path, ("tau1", "tau2", "n", "a", "b"), rows())


def write_averaged_csv(path, avg):
    _write_rows(path, ("n", "energy", "weight", "K_n"),
                ((str(n), _fmt(e), _fmt(w), _fmt(k))
                 for n, (e, w, k) in enumerate(avg.per_level)))


def write_curve_csv(path, points, header):
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if pts.size and pts.shape[1] != len(header):
        raise InvalidParameter("points and header widths differ")
    _write_rows(path, header, (tuple(_fmt(x) for x in row) for row in pts))


def write_paired_csv(path, times, k_plus, k_minus):
    _write_rows(path, ("t", "K_plus", "K_minus"),
                ((_fmt(t), _fmt(p), _fmt(q))
                 for t, p, q in zip(times, k_plus, k_minus)))


def write_json(path, obj):
    with _open_write(path) as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def read_table(path):
    """Any artifact CSV as (column names, float matrix); empty cells read
    as NaN."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise SchemaMismatch(f"{path}:{lineno}: expected {len(header)} fields")
            rows.append([math.nan if cell == "" else float(cell) for cell in row])
    data = np.asarray(rows, dtype=np.float64) if rows else np.empty((0, len(header)))
    return list(header), data


@dataclass(frozen=True)
class ComparisonReport:
    columns: list
    max_abs: np.ndarray
    max_rel: np.ndarray
    n_rows: int
    passed: bool

    def to_dict(self):
        return {
            "columns": list(self.columns),
            "max_abs": [None if math.isnan(v) else v for v in self.max_abs.tolist()],
            "max_rel": [None if math.isnan(v) else v for v in self.max_rel.tolist()],
            "n_rows": self.n_rows,
            "passed": self.passed,
        }


def compare_tables(path_a, path_b, rtol=0.0, atol=0.0):
    """Cell-wise comparison of two CSV artifacts with identical schemas.

    A cell pair passes when |a-b| <= atol + rtol*|b| or both are NaN;
    reports per-column maxima of |a-b| and |a-b|/|b|."""
    cols_a, a = read_table(path_a)
    cols_b, b = read_table(path_b)
    if cols_a != cols_b:
        raise SchemaMismatch(f"column mismatch: {cols_a} vs {cols_b}")
    if a.shape != b.shape:
        raise SchemaMismatch(f"row-count mismatch: {a.shape[0]} vs {b.shape[0]}")
    if a.size == 0:
        return ComparisonReport(cols_a, np.zeros(len(cols_a)), np.zeros(len(cols_a)),
                                0, True)
    nan_a, nan_b = np.isnan(a), np.isnan(b)
    if np.any(nan_a != nan_b):
        raise SchemaMismatch("empty-cell patterns differ")
    diff = np.abs(a - b)
    diff[nan_a] = 0.0
    ok = nan_a | (diff <= atol + rtol * np.abs(np.where(nan_b, 0.0, b)))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(diff == 0.0, 0.0, diff / np.abs(b))
    return ComparisonReport(cols_a, np.max(diff, axis=0), np.max(rel, axis=0),
                            a.shape[0], bool(np.all(ok)))
