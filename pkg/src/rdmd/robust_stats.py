"""Robust location/scale estimators, projection statistics and GM weights.

The scale estimators follow the usual normal-consistent conventions:

* ``mad`` / ``scale_s1``: ``1.4826 * median |x - median(x)|``
* ``scale_s2``: ``1.1926 * lomed_k lomed_{j != k} |x_k - x_j|``

``lomed`` is the low median, the ``floor((n + 1) / 2)``-th order statistic.
The projection statistic of a point is its largest robustly standardised
distance from the median over the directions joining the coordinate-wise
median to every data point.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ._backend import kernels
from ._kernels_py import MAD_CONSTANT, QN_CONSTANT
from .errors import (DegenerateDataWarning, DomainError, InsufficientDataError,
                     MalformedInputError, RankDeficiencyError)

__all__ = [
    "ScaleEstimatorKind",
    "OutlierReport",
    "median",
    "lomed",
    "mad",
    "scale_s1",
    "scale_s2",
    "scale_s2_bruteforce",
    "direction_set",
    "projection_statistics",
    "weights_from_ps",
    "chi2_quantile",
    "mahalanobis",
    "snapshot_outlier_report",
]

# Column blocks for the projection matrix; keeps memory at N x _BLOCK doubles.
_BLOCK = 2048


class ScaleEstimatorKind(str, enum.Enum):
    """Scale estimator used inside projection statistics."""

    MadS1 = "s1"
    QnS2 = "s2"

    @classmethod
    def parse(cls, value) -> "ScaleEstimatorKind":
        if isinstance(value, cls):
            return value
        v = str(value).strip().lower()
        aliases = {"s1": cls.MadS1, "mad": cls.MadS1, "mads1": cls.MadS1,
                   "s2": cls.QnS2, "qn": cls.QnS2, "qns2": cls.QnS2}
        try:
            return aliases[v]
        except KeyError:
            raise DomainError(f"unknown scale estimator {value!r}; use 's1' or 's2'") from None


def _vector(xs, name="input") -> np.ndarray:
    x = np.asarray(xs, dtype=float).ravel()
    if x.size == 0:
        raise DomainError(f"{name} is empty")
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} contains non-finite values")
    return x


def median(xs) -> float:
    """Sample median; the mean of the two central order statistics for even n."""
    x = np.sort(_vector(xs))
    n = x.size
    h = n // 2
    if n % 2:
        return float(x[h])
    return float((x[h - 1] + x[h]) / 2.0)


def lomed(xs) -> float:
    """Low median: the ``floor((n + 1) / 2)``-th smallest value."""
    x = _vector(xs)
    idx = (x.size - 1) // 2
    return float(np.partition(x, idx)[idx])


def mad(xs) -> float:
    """Normal-consistent median absolute deviation from the median."""
    x = _vector(xs)
    return MAD_CONSTANT * median(np.abs(x - median(x)))


def scale_s1(projections) -> float:
    """MAD of projected values ``p_k^T v``; same arithmetic as :func:`mad`."""
    return mad(_vector(projections, "projections"))


def scale_s2(projections) -> float:
    """Nested low-median scale of pairwise differences, normal-consistent.

    Runs in O(n log n); :func:`scale_s2_bruteforce` is the O(n^2) reference
    and returns the identical value.
    """
    x = _vector(projections, "projections")
    if x.size < 2:
        raise DomainError("scale_s2 needs at least 2 values")
    return QN_CONSTANT * float(kernels.qn_raw(x))


def scale_s2_bruteforce(projections) -> float:
    """Double-loop evaluation of :func:`scale_s2`."""
    x = _vector(projections, "projections")
    n = x.size
    if n < 2:
        raise DomainError("scale_s2 needs at least 2 values")
    inner = []
    for k in range(n):
        diffs = [abs(x[k] - x[j]) for j in range(n) if j != k]
        inner.append(lomed(diffs))
    return QN_CONSTANT * lomed(inner)


def _points(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[:, np.newaxis]
    if P.ndim != 2 or P.shape[0] < 1 or P.shape[1] < 1:
        raise MalformedInputError(f"points must be an (N, m) array, got shape {np.shape(points)}")
    if not np.all(np.isfinite(P)):
        raise MalformedInputError("points contain non-finite values")
    return P


def _coordinate_median(P: np.ndarray) -> np.ndarray:
    s = np.sort(P, axis=0)
    n = s.shape[0]
    h = n // 2
    if n % 2:
        return s[h].copy()
    return (s[h - 1] + s[h]) / 2.0


def direction_set(points) -> np.ndarray:
    """Directions ``p_k - v_med`` through the coordinate-wise median.

    Returns an ``(M, m)`` array of the nonzero directions, unnormalised.
    """
    P = _points(points)
    V = P - _coordinate_median(P)
    return V[np.any(V != 0, axis=1)]


def projection_statistics(points, scale=ScaleEstimatorKind.QnS2) -> np.ndarray:
    """Projection statistic ``d_ps`` of every point (rows of ``points``).

    Directions whose robust scale is zero are skipped.  When every direction
    is skipped the result is all zeros and a :class:`DegenerateDataWarning`
    is issued.
    """
    P = _points(points)
    if P.shape[0] < 3:
        raise InsufficientDataError(
            f"projection statistics need at least 3 points, got {P.shape[0]}")
    use_qn = ScaleEstimatorKind.parse(scale) is ScaleEstimatorKind.QnS2
    V = direction_set(P)
    d = np.zeros(P.shape[0])
    used = 0
    for start in range(0, V.shape[0], _BLOCK):
        # Fortran-ordered (N, M): each direction's projections are contiguous
        proj = (V[start:start + _BLOCK] @ P.T).T
        d_blk, n_blk = kernels.ps_from_projections(proj, use_qn)
        if n_blk:
            np.maximum(d, d_blk, out=d)
            used += n_blk
    if used == 0:
        warnings.warn("all projection directions have zero scale; "
                      "projection statistics set to zero", DegenerateDataWarning, stacklevel=2)
    return d


def chi2_quantile(quantile: float, dof: int) -> float:
    """Inverse chi-square CDF (exact, via scipy)."""
    if not 0.0 < quantile < 1.0:
        raise DomainError(f"quantile must lie in (0, 1), got {quantile}")
    if dof < 1:
        raise DomainError(f"dof must be >= 1, got {dof}")
    return float(stats.chi2.ppf(quantile, dof))


@dataclass(frozen=True, eq=False)
class OutlierReport:
    """Per-snapshot projection statistics, GM weights and outlier flags."""

    d_ps: np.ndarray
    weights: np.ndarray
    flags: np.ndarray
    threshold: float
    dof: int
    b: float
    scale_estimator: str = ScaleEstimatorKind.QnS2.value

    def __len__(self):
        return int(self.d_ps.shape[0])

    @property
    def n_flagged(self) -> int:
        return int(np.count_nonzero(self.flags))

    def to_dict(self) -> dict:
        return {
            "d_ps": [float(v) for v in self.d_ps],
            "weights": [float(v) for v in self.weights],
            "flags": [bool(v) for v in self.flags],
            "threshold": float(self.threshold),
            "dof": int(self.dof),
            "b": float(self.b),
            "scale_estimator": str(self.scale_estimator),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutlierReport":
        return cls(np.asarray(d["d_ps"], dtype=float), np.asarray(d["weights"], dtype=float),
                   np.asarray(d["flags"], dtype=bool), float(d["threshold"]), int(d["dof"]),
                   float(d["b"]), str(d.get("scale_estimator", "s2")))

    @classmethod
    def uniform(cls, n: int, b: float = 1.5, dof: int = 1) -> "OutlierReport":
        """All weights one, nothing flagged (turns the GM estimator into plain M)."""
        return cls(np.zeros(n), np.ones(n), np.zeros(n, dtype=bool), np.inf, dof, b, "none")


def weights_from_ps(d_ps, b: float = 1.5, dof: int = 2, quantile: float = 0.975,
                    scale_estimator=ScaleEstimatorKind.QnS2) -> OutlierReport:
    """Weights ``w_k = min(1, b / d_ps_k^2)`` and chi-square outlier flags."""
    d = np.asarray(d_ps, dtype=float).ravel()
    if not np.all(np.isfinite(d)):
        raise DomainError("projection statistics must be finite")
    if np.any(d < 0):
        raise DomainError("projection statistics must be nonnegative")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    threshold = chi2_quantile(quantile, int(dof))
    d2 = d * d
    with np.errstate(divide="ignore", over="ignore"):
        w = np.where(d2 > 0, np.minimum(1.0, b / np.where(d2 > 0, d2, 1.0)), 1.0)
    flags = d2 > threshold
    return OutlierReport(d, w, flags, threshold, int(dof), float(b),
                         ScaleEstimatorKind.parse(scale_estimator).value)


def snapshot_outlier_report(pair, scale=ScaleEstimatorKind.QnS2, b: float = 1.5,
                            dof=None, quantile: float = 0.975) -> OutlierReport:
    """Outlier report for the transitions ``z_k = [y_k; y_{k+1}]`` of a pair.

    One statistic per residual index ``k``; ``dof`` defaults to ``2m``.
    """
    Z = pair.stacked()
    if dof is None:
        dof = Z.shape[1]
    d = projection_statistics(Z, scale)
    return weights_from_ps(d, b=b, dof=dof, quantile=quantile, scale_estimator=scale)


def mahalanobis(points) -> np.ndarray:
    """Classical Mahalanobis distance of each row from the sample mean.

    Uses the unbiased (``N - 1``) sample covariance.
    """
    P = _points(points)
    N, m = P.shape
    if N <= m:
        raise InsufficientDataError(f"need more points than dimensions (N={N}, m={m})")
    X = P - P.mean(axis=0)
    S = X.T @ X / (N - 1)
    sv = np.linalg.svd(S, compute_uv=False)
    if sv[-1] <= sv[0] * m * np.finfo(float).eps:
        raise RankDeficiencyError(
            "sample covariance is singular; use projection_statistics instead")
    L = np.linalg.cholesky(S)
    Z = np.linalg.solve(L, X.T)
    return np.sqrt(np.sum(Z * Z, axis=0))
