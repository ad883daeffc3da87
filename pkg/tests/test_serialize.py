import json
import math

import numpy as np
import pytest

from krylovflow import (
    Deformation,
    InvalidParameter,
    SchemaMismatch,
    SpectralMeasure,
    TimeSeries,
    TridiagonalOperator,
    evolve,
    stieltjes_lanczos,
    time_averaged_complexity,
)
from krylovflow.serialize import (
    ComparisonReport,
    compare_tables,
    read_chain_csv,
    read_json,
    read_measure_csv,
    read_table,
    read_timeseries_csv,
    write_averaged_csv,
    write_chain_csv,
    write_curve_csv,
    write_json,
    write_measure_csv,
    write_paired_csv,
    write_state_csv,
    write_timeseries_csv,
    write_trajectory_csv,
)


def random_chain(rng, d):
    return TridiagonalOperator(rng.normal(size=d), rng.uniform(0.1, 2.0, size=d - 1))


def test_measure_round_trip_is_exact(tmp_path):
    # 17 significant digits reproduce any float64 exactly, including
    # subnormal-adjacent magnitudes and non-terminating decimals
    e = np.array([-1e12, -math.pi, 1.0 / 3.0, 2.0, 7.3e11])
    lw = np.array([-700.25, 0.0, math.log(2.0), -1e-300, 3.5])
    m = SpectralMeasure(e, lw)
    path = tmp_path / "m.csv"
    write_measure_csv(path, m)
    back = read_measure_csv(path)
    assert np.array_equal(back.energies, e)
    assert np.array_equal(back.log_weights, lw)


def test_measure_wrong_columns_rejected(tmp_path):
    path = tmp_path / "notm.csv"
    path.write_text("foo,bar\n1,2\n")
    with pytest.raises(SchemaMismatch):
        read_measure_csv(path)


def test_chain_round_trip_with_padded_coupling(tmp_path):
    rng = np.random.default_rng(5)
    t_op = random_chain(rng, 9)
    path = tmp_path / "chain.csv"
    write_chain_csv(path, t_op)
    cols, data = read_table(path)
    assert cols == ["n", "a", "b"]
    assert data.shape == (9, 3)
    assert math.isnan(data[-1, 2])  # level d-1 has no outgoing coupling
    back = read_chain_csv(path)
    assert np.array_equal(back.a, t_op.a)
    assert np.array_equal(back.b, t_op.b)


def test_chain_single_level(tmp_path):
    t_op = TridiagonalOperator(np.array([0.75]), np.array([]))
    path = tmp_path / "chain1.csv"
    write_chain_csv(path, t_op)
    assert path.read_text() == "n,a,b\n0,0.75,\n"
    back = read_chain_csv(path)
    assert back.d == 1
    assert back.b.size == 0


def test_timeseries_round_trip_real(tmp_path):
    times = np.linspace(0.0, 2.0, 7)
    vals = np.cos(times) ** 2
    path = tmp_path / "ts.csv"
    write_timeseries_csv(path, TimeSeries(times, vals, "K"))
    cols, _ = read_table(path)
    assert cols == ["t", "value"]
    back = read_timeseries_csv(path, "K")
    assert not back.is_complex
    assert np.array_equal(back.times, times)
    assert np.array_equal(back.values, vals)


def test_timeseries_round_trip_complex(tmp_path):
    times = np.linspace(0.0, 1.0, 5)
    vals = np.exp(-1j * 2.3 * times) * (1.0 - 0.1 * times)
    path = tmp_path / "amp.csv"
    write_timeseries_csv(path, TimeSeries(times, vals, "S"))
    cols, _ = read_table(path)
    assert cols == ["t", "re", "im"]
    back = read_timeseries_csv(path)
    assert back.is_complex
    assert np.array_equal(back.values, vals)
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,c,d\n1,2,3,4\n")
    with pytest.raises(SchemaMismatch):
        read_timeseries_csv(bad)


def test_state_csv_columns(tmp_path):
    t_op = random_chain(np.random.default_rng(8), 6)
    state = evolve(t_op, 0.9)
    path = tmp_path / "state.csv"
    write_state_csv(path, state)
    cols, data = read_table(path)
    assert cols == ["n", "re", "im"]
    assert np.array_equal(data[:, 0], np.arange(6.0))
    assert np.array_equal(data[:, 1] + 1j * data[:, 2], state.amplitudes)


def test_trajectory_long_format(tmp_path):
    rng = np.random.default_rng(3)
    taus = [Deformation(0.0, 0.0), Deformation(0.5, 0.0), Deformation(1.0, 0.2)]
    ops = [random_chain(rng, d) for d in (4, 4, 6)]
    path = tmp_path / "traj.csv"
    write_trajectory_csv(path, taus, ops)
    cols, data = read_table(path)
    assert cols == ["tau1", "tau2", "n", "a", "b"]
    assert data.shape[0] == sum(op.d for op in ops)
    row = 0
    for tau, op in zip(taus, ops):
        blk = data[row:row + op.d]
        assert np.all(blk[:, 0] == tau.tau1) and np.all(blk[:, 1] == tau.tau2)
        assert np.array_equal(blk[:, 2], np.arange(float(op.d)))
        assert np.array_equal(blk[:, 3], op.a)
        assert np.array_equal(blk[:-1, 4], op.b)
        assert math.isnan(blk[-1, 4])
        row += op.d


def test_trajectory_length_mismatch(tmp_path):
    rng = np.random.default_rng(4)
    with pytest.raises(InvalidParameter):
        write_trajectory_csv(tmp_path / "x.csv",
                             [Deformation(0.0, 0.0)],
                             [random_chain(rng, 3), random_chain(rng, 3)])


def test_averaged_csv(tmp_path):
    m = SpectralMeasure.from_points([-1.3, -0.2, 0.6, 1.9], [0.0, -0.4, -1.1, 0.2])
    avg = time_averaged_complexity(stieltjes_lanczos(m))
    path = tmp_path / "kbar.csv"
    write_averaged_csv(path, avg)
    cols, data = read_table(path)
    assert cols == ["n", "energy", "weight", "K_n"]
    assert np.array_equal(data[:, 1], avg.energies)
    assert np.array_equal(data[:, 2], avg.weights)
    assert np.array_equal(data[:, 3], avg.k_levels)


def test_paired_csv(tmp_path):
    times = np.array([0.0, 0.5, 1.0])
    kp = np.array([0.0, 0.25, 1.0])
    path = tmp_path / "paired.csv"
    write_paired_csv(path, times, kp, 3.0 * kp)
    cols, data = read_table(path)
    assert cols == ["t", "K_plus", "K_minus"]
    assert np.array_equal(data[:, 1] * 3.0, data[:, 2])


def test_curve_csv_width_checked(tmp_path):
    pts = np.array([[0.1, 2.0], [0.3, 1.5]])
    path = tmp_path / "curve.csv"
    with pytest.raises(InvalidParameter):
        write_curve_csv(path, pts, ("t", "beta", "extra"))
    write_curve_csv(path, pts, ("t", "beta"))
    cols, data = read_table(path)
    assert cols == ["t", "beta"]
    assert np.array_equal(data, pts)


def test_curve_csv_no_points(tmp_path):
    # a boundary scan past the critical temperature legitimately has no roots
    path = tmp_path / "empty_curve.csv"
    write_curve_csv(path, np.empty((0, 2)), ("t", "beta"))
    cols, data = read_table(path)
    assert cols == ["t", "beta"]
    assert data.shape == (0, 2)


def test_json_round_trip_sorted_with_newline(tmp_path):
    obj = {"zeta": [1, 2.5], "alpha": {"nested": True}, "mid": None}
    path = tmp_path / "meta.json"
    write_json(path, obj)
    text = path.read_text()
    assert text.endswith("}\n")
    assert text.index('"alpha"') < text.index('"mid"') < text.index('"zeta"')
    assert read_json(path) == obj


def test_rewrites_are_byte_identical(tmp_path):
    rng = np.random.default_rng(12)
    m = SpectralMeasure.from_points(rng.normal(size=11), rng.normal(size=11))
    t_op = stieltjes_lanczos(m)
    pairs = []
    for tag in ("one", "two"):
        mp, cp = tmp_path / f"m_{tag}.csv", tmp_path / f"c_{tag}.csv"
        write_measure_csv(mp, m)
        write_chain_csv(cp, t_op)
        pairs.append((mp.read_bytes(), cp.read_bytes()))
    assert pairs[0] == pairs[1]


def test_read_table_rejects_empty_file(tmp_path):
    path = tmp_path / "void.csv"
    path.write_text("")
    with pytest.raises(SchemaMismatch, match="empty"):
        read_table(path)


def test_read_table_rejects_ragged_rows(tmp_path):
    path = tmp_path / "ragged.csv"
    path.write_text("a,b\n1,2\n3,4,5\n")
    with pytest.raises(SchemaMismatch, match=":3"):
        read_table(path)


def test_read_table_empty_cells_become_nan(tmp_path):
    path = tmp_path / "holes.csv"
    path.write_text("x,y\n1.5,\n,2.5\n")
    cols, data = read_table(path)
    assert cols == ["x", "y"]
    assert math.isnan(data[0, 1]) and math.isnan(data[1, 0])
    assert data[0, 0] == 1.5 and data[1, 1] == 2.5


def write_pair(tmp_path, rows_a, rows_b, header=("x", "y")):
    pa, pb = tmp_path / "a.csv", tmp_path / "b.csv"
    write_curve_csv(pa, rows_a, header)
    write_curve_csv(pb, rows_b, header)
    return pa, pb


def test_compare_identical_tables(tmp_path):
    pts = np.array([[0.5, -1.25], [1.5, 2.75]])
    pa, pb = write_pair(tmp_path, pts, pts)
    rep = compare_tables(pa, pb)
    assert rep.passed
    assert rep.n_rows == 2
    assert np.all(rep.max_abs == 0.0) and np.all(rep.max_rel == 0.0)


def test_compare_reports_maxima_and_tolerances(tmp_path):
    # exact binary fractions keep the expected deviations exact
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[1.0, 2.5], [3.0, 4.0]])
    pa, pb = write_pair(tmp_path, a, b)
    rep = compare_tables(pa, pb)
    assert not rep.passed
    assert np.array_equal(rep.max_abs, [0.0, 0.5])
    assert np.array_equal(rep.max_rel, [0.0, 0.5 / 2.5])
    assert compare_tables(pa, pb, atol=0.5).passed
    assert not compare_tables(pa, pb, atol=0.49).passed
    assert compare_tables(pa, pb, rtol=0.2).passed
    assert not compare_tables(pa, pb, rtol=0.19).passed


def test_compare_chain_files_with_shared_padding(tmp_path):
    t_op = random_chain(np.random.default_rng(2), 5)
    pa, pb = tmp_path / "ca.csv", tmp_path / "cb.csv"
    write_chain_csv(pa, t_op)
    write_chain_csv(pb, t_op)
    rep = compare_tables(pa, pb)
    assert rep.passed and np.all(rep.max_abs == 0.0)


def test_compare_schema_mismatches(tmp_path):
    pts = np.array([[1.0, 2.0]])
    pa, _ = write_pair(tmp_path, pts, pts)
    other_cols = tmp_path / "oc.csv"
    write_curve_csv(other_cols, pts, ("x", "z"))
    with pytest.raises(SchemaMismatch, match="column"):
        compare_tables(pa, other_cols)
    longer = tmp_path / "long.csv"
    write_curve_csv(longer, np.array([[1.0, 2.0], [3.0, 4.0]]), ("x", "y"))
    with pytest.raises(SchemaMismatch, match="row"):
        compare_tables(pa, longer)
    holey = tmp_path / "holey.csv"
    write_curve_csv(holey, np.array([[1.0, math.nan]]), ("x", "y"))
    with pytest.raises(SchemaMismatch, match="empty-cell"):
        compare_tables(pa, holey)


def test_compare_empty_tables_pass(tmp_path):
    pa, pb = write_pair(tmp_path, np.empty((0, 2)), np.empty((0, 2)))
    rep = compare_tables(pa, pb)
    assert rep.passed and rep.n_rows == 0
    assert np.all(rep.max_abs == 0.0) and np.all(rep.max_rel == 0.0)


def test_report_to_dict_maps_nan_to_null():
    rep = ComparisonReport(["x"], np.array([math.nan]), np.array([0.25]), 1, True)
    d = rep.to_dict()
    assert d["max_abs"] == [None]
    assert d["max_rel"] == [0.25]
    assert d["columns"] == ["x"] and d["n_rows"] == 1 and d["passed"] is True
    json.dumps(d)  # manifest consumers expect plain JSON types
