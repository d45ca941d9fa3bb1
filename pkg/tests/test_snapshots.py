import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from rdmd import (InsufficientDataError, MalformedInputError, ParseError, SnapshotPair,
                  TimeSeries, build_pair, make_system, read_csv, read_paired_csv, simulate,
                  write_csv)


def test_build_pair_shift():
    s = TimeSeries.from_samples([(1, 0), (0, 1), (-1, 0)], dt=0.1)
    p = build_pair(s)
    np.testing.assert_array_equal(p.Y, [[1, 0], [0, 1]])
    np.testing.assert_array_equal(p.Yp, [[0, -1], [1, 0]])
    assert p.dt == 0.1
    assert p.overlap_consistent()


def test_constant_series():
    v = np.array([2.0, -1.0, 3.0])
    s = TimeSeries(np.tile(v[:, None], 6), 1.0)
    p = build_pair(s)
    np.testing.assert_array_equal(p.Y, p.Yp)
    np.testing.assert_array_equal(p.Y[:, 0], v)


def test_pair_matches_matrix_exponential():
    theta = np.array([[-1.0, -3.0], [1.0, 1.0]])
    s = simulate(make_system("linear2x2"), x0=[1.0, 0.5], dt=0.01, steps=200)
    p = build_pair(s)
    np.testing.assert_allclose(p.Yp, scipy.linalg.expm(theta * 0.01) @ p.Y, atol=1e-10)


def test_ragged_samples_rejected():
    with pytest.raises(MalformedInputError):
        TimeSeries.from_samples([(1, 0), (0, 1, 2)], dt=1.0)


def test_single_sample_rejected():
    with pytest.raises(InsufficientDataError):
        TimeSeries.from_samples([(1, 0)], dt=1.0)
    with pytest.raises(InsufficientDataError):
        TimeSeries(np.ones((2, 1)), 1.0)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_non_finite_rejected(bad):
    X = np.ones((2, 4))
    X[1, 2] = bad
    with pytest.raises(MalformedInputError):
        TimeSeries(X, 1.0)


@pytest.mark.parametrize("dt", [0.0, -0.1, np.inf])
def test_bad_dt(dt):
    with pytest.raises(MalformedInputError):
        TimeSeries(np.ones((1, 3)), dt)


def test_stacked_rows():
    p = SnapshotPair(np.arange(6.0).reshape(2, 3), 10 + np.arange(6.0).reshape(2, 3), 1.0)
    Z = p.stacked()
    assert Z.shape == (3, 4)
    np.testing.assert_array_equal(Z[1], [1, 4, 11, 14])


def test_paired_pair_need_not_overlap():
    p = SnapshotPair(np.eye(2), 2 * np.eye(2), 1.0, contiguous=False)
    assert not p.overlap_consistent()


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    s = TimeSeries(rng.standard_normal((2, 3)) * 1e-7, 0.01, labels=["a", "b"])
    path = tmp_path / "s.csv"
    write_csv(s, path)
    assert path.read_text().splitlines()[0] == "t,a,b"
    assert read_csv(path) == s


def test_csv_header_only(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("t,x1\n")
    with pytest.raises(InsufficientDataError):
        read_csv(path)


def test_csv_nan_cell(tmp_path):
    path = tmp_path / "n.csv"
    path.write_text("t,x1,x2\n0,1,2\n0.1,nan,3\n0.2,1,1\n")
    with pytest.raises(ParseError) as info:
        read_csv(path)
    assert info.value.row == 3 and info.value.column == 2


def test_csv_non_numeric(tmp_path):
    path = tmp_path / "b.csv"
    path.write_text("t,x1\n0,1\n0.1,abc\n")
    with pytest.raises(ParseError, match="non-numeric"):
        read_csv(path)


def test_csv_ragged(tmp_path):
    path = tmp_path / "r.csv"
    path.write_text("t,x1,x2\n0,1,2\n0.1,1\n")
    with pytest.raises(ParseError, match="ragged"):
        read_csv(path)


def test_csv_missing_time_column(tmp_path):
    path = tmp_path / "m.csv"
    path.write_text("x1,x2\n1,2\n3,4\n")
    with pytest.raises(ParseError, match="time column"):
        read_csv(path)


def test_csv_uneven_spacing(tmp_path):
    path = tmp_path / "u.csv"
    path.write_text("t,x1\n0,1\n0.1,2\n0.25,3\n")
    with pytest.raises(ParseError, match="spacing"):
        read_csv(path)


def test_csv_drops_cum_err(tmp_path):
    s = TimeSeries(np.arange(6.0).reshape(2, 3), 0.5)
    path = tmp_path / "c.csv"
    write_csv(s, path, extra_columns={"cum_err": [0.0, 1.0, 2.0]})
    assert read_csv(path) == s


def test_read_paired(tmp_path):
    a = TimeSeries(np.arange(6.0).reshape(2, 3), 0.5)
    b = TimeSeries(np.arange(6.0).reshape(2, 3) + 100, 0.5)
    write_csv(a, tmp_path / "y.csv")
    write_csv(b, tmp_path / "yp.csv")
    p = read_paired_csv(tmp_path / "y.csv", tmp_path / "yp.csv")
    assert not p.contiguous
    np.testing.assert_array_equal(p.Yp, b.states)


finite = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False, allow_infinity=False)


@settings(max_examples=40, deadline=None)
@given(hnp.arrays(np.float64, hnp.array_shapes(min_dims=2, max_dims=2, min_side=2, max_side=6),
                  elements=finite),
       st.floats(min_value=1e-4, max_value=10.0))
def test_csv_round_trip_property(tmp_path_factory, X, dt):
    s = TimeSeries(X, dt)
    path = tmp_path_factory.mktemp("rt") / "s.csv"
    write_csv(s, path)
    back = read_csv(path)
    np.testing.assert_array_equal(back.states, s.states)
    assert back.labels == s.labels


@settings(max_examples=40, deadline=None)
@given(hnp.arrays(np.float64, st.tuples(st.integers(1, 4), st.integers(2, 30)), elements=finite))
def test_overlap_property(X):
    assert build_pair(TimeSeries(X, 1.0)).overlap_consistent()
