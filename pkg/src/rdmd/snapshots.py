"""Time series containers, snapshot-matrix construction and CSV persistence.

A :class:`TimeSeries` holds ``N + 1`` samples of an ``m``-channel signal as
the columns of an ``(m, N + 1)`` array.  :func:`build_pair` shifts it into the
two ``(m, N)`` snapshot matrices ``Y`` (columns ``y_0 .. y_{N-1}``) and ``Yp``
(columns ``y_1 .. y_N``) used by every estimator.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InsufficientDataError, MalformedInputError, ParseError

__all__ = [
    "TimeSeries",
    "SnapshotPair",
    "build_pair",
    "read_csv",
    "write_csv",
    "read_paired_csv",
]

SPACING_RTOL = 1e-9


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled multichannel signal.

    Parameters
    ----------
    states : array_like, shape (m, N + 1)
        One column per sampling instant.
    dt : float
        Sampling interval in seconds.
    t0 : float
        Time of the first sample.
    labels : sequence of str, optional
        Channel names; defaults to ``x1 .. xm``.
    """

    states: np.ndarray
    dt: float
    t0: float = 0.0
    labels: Optional[Sequence[str]] = None

    def __post_init__(self):
        X = np.asarray(self.states, dtype=float)
        if X.ndim == 1:
            X = X[np.newaxis, :]
        if X.ndim != 2 or X.shape[0] < 1:
            raise MalformedInputError(
                f"states must be a 2-D (m, N+1) array, got shape {np.shape(self.states)}")
        if X.shape[1] < 2:
            raise InsufficientDataError(
                f"a time series needs at least 2 samples, got {X.shape[1]}")
        if not np.all(np.isfinite(X)):
            bad = np.argwhere(~np.isfinite(X))[0]
            raise MalformedInputError(
                f"non-finite value in channel {bad[0]} at sample {bad[1]}")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise MalformedInputError(f"dt must be positive and finite, got {self.dt}")
        labels = self.labels
        if labels is None:
            labels = tuple(f"x{i + 1}" for i in range(X.shape[0]))
        else:
            labels = tuple(str(s) for s in labels)
            if len(labels) != X.shape[0]:
                raise MalformedInputError(
                    f"{len(labels)} labels given for {X.shape[0]} channels")
        object.__setattr__(self, "states", _frozen(X))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_samples(cls, samples, dt, t0=0.0, labels=None):
        """Build from a sequence of ``N + 1`` state vectors (one per row)."""
        rows = [np.atleast_1d(np.asarray(s, dtype=float)) for s in samples]
        if len(rows) < 2:
            raise InsufficientDataError(
                f"a time series needs at least 2 samples, got {len(rows)}")
        dims = {r.shape for r in rows}
        if len(dims) != 1 or rows[0].ndim != 1:
            raise MalformedInputError(
                f"all samples must be vectors of equal length, got shapes {sorted(dims)}")
        return cls(np.column_stack(rows), dt, t0, labels)

    @property
    def m(self) -> int:
        return self.states.shape[0]

    @property
    def n_samples(self) -> int:
        return self.states.shape[1]

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n_samples)

    def replace_states(self, states) -> "TimeSeries":
        return TimeSeries(states, self.dt, self.t0, self.labels)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (self.dt == other.dt and self.t0 == other.t0
                and self.labels == other.labels
                and self.states.shape == other.states.shape
                and bool(np.array_equal(self.states, other.states)))

    __hash__ = None


@dataclass(frozen=True, eq=False)
class SnapshotPair:
    """The paired snapshot matrices ``Y`` and ``Yp`` (each ``m x N``)."""

    Y: np.ndarray
    Yp: np.ndarray
    dt: float
    contiguous: bool = field(default=True)

    def __post_init__(self):
        Y = np.asarray(self.Y, dtype=float)
        Yp = np.asarray(self.Yp, dtype=float)
        if Y.ndim != 2 or Yp.shape != Y.shape:
            raise MalformedInputError(
                f"Y and Yp must be 2-D with identical shape, got {Y.shape} and {Yp.shape}")
        if Y.shape[1] < 1 or Y.shape[0] < 1:
            raise InsufficientDataError("snapshot matrices are empty")
        if not (np.all(np.isfinite(Y)) and np.all(np.isfinite(Yp))):
            raise MalformedInputError("snapshot matrices contain non-finite values")
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise MalformedInputError(f"dt must be positive and finite, got {self.dt}")
        object.__setattr__(self, "Y", _frozen(Y))
        object.__setattr__(self, "Yp", _frozen(Yp))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def m(self) -> int:
        return self.Y.shape[0]

    @property
    def N(self) -> int:
        return self.Y.shape[1]

    def overlap_consistent(self) -> bool:
        """True when column ``j`` of ``Yp`` equals column ``j + 1`` of ``Y``."""
        return bool(np.array_equal(self.Yp[:, :-1], self.Y[:, 1:]))

    def stacked(self) -> np.ndarray:
        """Transition vectors ``z_k = [y_k; y_{k+1}]`` as rows, shape ``(N, 2m)``."""
        return np.hstack([self.Y.T, self.Yp.T])

    def scaled(self, c: float) -> "SnapshotPair":
        return SnapshotPair(c * self.Y, c * self.Yp, self.dt, self.contiguous)


def build_pair(series: TimeSeries) -> SnapshotPair:
    """Split a contiguous series into ``Y = [y_0 .. y_{N-1}]``, ``Yp = [y_1 .. y_N]``."""
    if not isinstance(series, TimeSeries):
        series = TimeSeries(series, 1.0)
    X = series.states
    return SnapshotPair(X[:, :-1], X[:, 1:], series.dt, contiguous=True)


def _fmt(x: float) -> str:
    return "%.17g" % x


def write_csv(series: TimeSeries, path, extra_columns=None) -> None:
    """Write ``series`` as ``t,x1,...,xm`` rows with 17 significant digits.

    ``extra_columns`` maps a header name to a length-``N + 1`` vector appended
    after the state channels (used for the ``cum_err`` column of
    reconstructions).
    """
    extra_columns = dict(extra_columns or {})
    for name, col in extra_columns.items():
        if len(col) != series.n_samples:
            raise MalformedInputError(
                f"extra column {name!r} has {len(col)} entries, expected {series.n_samples}")
    header = ["t", *series.labels, *extra_columns]
    extras = [np.asarray(c, dtype=float) for c in extra_columns.values()]
    times = series.times
    with open(os.fspath(path), "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for k in range(series.n_samples):
            row = [_fmt(times[k])]
            row.extend(_fmt(v) for v in series.states[:, k])
            row.extend(_fmt(c[k]) for c in extras)
            w.writerow(row)


def _parse_cell(text: str, row: int, col: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"non-numeric cell {text!r}", row=row, column=col) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite cell {text!r}", row=row, column=col)
    return v


def read_csv(path, drop_columns=("cum_err",)) -> TimeSeries:
    """Read a ``t,x1,...,xm`` CSV file into a :class:`TimeSeries`.

    The time column must be strictly increasing with constant spacing; that
    spacing becomes ``dt``.  Columns named in ``drop_columns`` are ignored.
    """
    with open(os.fspath(path), newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r and any(c.strip() for c in r)]
    if not rows:
        raise ParseError("empty file", row=1)
    header = [h.strip() for h in rows[0]]
    if not header or header[0].lower() != "t":
        raise ParseError("missing time column: header must start with 't'", row=1, column=1)
    keep = [j for j, h in enumerate(header) if j > 0 and h not in drop_columns]
    if not keep:
        raise ParseError("no data columns after the time column", row=1)
    body = rows[1:]
    if len(body) < 2:
        raise InsufficientDataError(
            f"{path}: need at least 2 data rows, found {len(body)}")
    t = np.empty(len(body))
    X = np.empty((len(keep), len(body)))
    for i, r in enumerate(body):
        lineno = i + 2
        if len(r) != len(header):
            raise ParseError(
                f"ragged row: {len(r)} cells, header has {len(header)}", row=lineno)
        t[i] = _parse_cell(r[0].strip(), lineno, 1)
        for out, j in enumerate(keep):
            X[out, i] = _parse_cell(r[j].strip(), lineno, j + 1)
    steps = np.diff(t)
    if np.any(steps <= 0):
        bad = int(np.argmax(steps <= 0)) + 3
        raise ParseError("time column is not strictly increasing", row=bad, column=1)
    dt = float(t[1] - t[0])
    dev = np.abs(steps - dt)
    if np.any(dev > SPACING_RTOL * dt + 8 * np.spacing(np.abs(t[1:]))):
        bad = int(np.argmax(dev > SPACING_RTOL * dt + 8 * np.spacing(np.abs(t[1:])))) + 3
        raise ParseError("time column spacing is not constant", row=bad, column=1)
    return TimeSeries(X, dt, t0=float(t[0]), labels=[header[j] for j in keep])


def read_paired_csv(path_y, path_yp) -> SnapshotPair:
    """Read ``Y`` and ``Yp`` from two files with one column per snapshot row.

    Row ``k`` of the second file is the successor of row ``k`` of the first;
    the files need not come from one contiguous trajectory.
    """
    a = read_csv(path_y)
    b = read_csv(path_yp)
    if a.states.shape != b.states.shape:
        raise MalformedInputError(
            f"paired files differ in shape: {a.states.shape} vs {b.states.shape}")
    if not math.isclose(a.dt, b.dt, rel_tol=SPACING_RTOL):
        raise MalformedInputError(f"paired files differ in dt: {a.dt} vs {b.dt}")
    return SnapshotPair(a.states, b.states, a.dt, contiguous=False)
