"""Operator identification: least-squares DMD and robust GM-estimator variants.

All estimators fit ``Yp ~ A Y``.  The robust ones minimise a Schweppe-type
Huber objective

    J(A) = sum_k w_k^2 * rho(r_k / (s * w_k))

by iteratively reweighted least squares, where ``w_k`` are the projection
statistics weights, ``s`` a robust residual scale and ``rho`` the Huber loss.
``krdmd`` applies the loss to every residual component and solves one
regression per row of ``A``; ``nrdmd`` applies it to residual-vector norms and
updates ``A`` as a whole; ``robust_standard_dmd`` does the latter for a reduced
operator ``A_tilde`` with ``A ~ T A_tilde T^+`` and Tikhonov regularisation.

``objective_trace`` records ``s^2 * J`` at every iterate, using the scale
estimated at that iterate.  Multiplying by ``s^2`` expresses the loss in
residual units (it equals the least-squares objective inside the Huber
corner), so entries computed with different scale estimates are comparable.

Weighted least-squares steps are solved from the square-root-weighted design
matrix with an SVD-based solver rather than by forming and inverting the
normal matrix.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg

from ._kernels_py import MAD_CONSTANT
from .errors import (ConvergenceWarning, DegenerateScaleWarning, DomainError,
                     InsufficientDataError, MalformedInputError, RankWarning,
                     RobustnessConditionError, TruncationError)
from .robust_stats import OutlierReport, ScaleEstimatorKind, snapshot_outlier_report
from .snapshots import SnapshotPair

__all__ = [
    "HuberConfig",
    "OperatorEstimate",
    "Residuals",
    "huber_rho",
    "huber_psi",
    "huber_weight",
    "robust_scale",
    "residuals",
    "ls_objective",
    "exact_dmd",
    "standard_dmd",
    "krdmd",
    "nrdmd",
    "robust_standard_dmd",
    "fit",
    "METHODS",
]

SVD_RTOL = 1e-12


@dataclass(frozen=True)
class HuberConfig:
    """Tuning of the robust estimators.

    ``gamma=None`` selects relative Tikhonov regularisation for
    :func:`robust_standard_dmd`: ``gamma^2 = 1e-6 * trace(T^+ Y Y^T T) / c'``.
    ``freeze_scale`` keeps the residual scale from the least-squares start
    instead of re-estimating it every iteration.
    """

    delta: float = 1.5
    b: float = 1.5
    irls_tol: float = 0.01
    max_iter: int = 50
    bm: float = 1.0
    gamma: Optional[float] = None
    freeze_scale: bool = False
    scale_estimator: str = "s2"
    dof: Optional[int] = None
    quantile: float = 0.975

    def __post_init__(self):
        for name in ("delta", "b", "irls_tol", "bm"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive, got {v}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter}")
        if self.gamma is not None and not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise DomainError(f"gamma must be >= 0, got {self.gamma}")
        if self.dof is not None and self.dof < 1:
            raise DomainError(f"dof must be >= 1, got {self.dof}")
        if not 0 < self.quantile < 1:
            raise DomainError(f"quantile must lie in (0, 1), got {self.quantile}")
        object.__setattr__(self, "scale_estimator",
                           ScaleEstimatorKind.parse(self.scale_estimator).value)

    def to_dict(self) -> dict:
        return {"delta": self.delta, "b": self.b, "tol": self.irls_tol,
                "max_iter": int(self.max_iter), "bm": self.bm, "gamma": self.gamma,
                "freeze_scale": self.freeze_scale, "scale_estimator": self.scale_estimator,
                "dof": self.dof, "quantile": self.quantile}


@dataclass(frozen=True, eq=False)
class Residuals:
    """Residual columns ``r_k = y_{k+1} - A y_k`` and their Euclidean norms."""

    R: np.ndarray
    norms: np.ndarray


def residuals(pair: SnapshotPair, A) -> Residuals:
    R = pair.Yp - np.asarray(A) @ pair.Y
    return Residuals(R, np.linalg.norm(R, axis=0))


@dataclass(frozen=True, eq=False)
class OperatorEstimate:
    """Fitted operator plus IRLS diagnostics.

    ``A`` is the full ``m x m`` operator, or the reduced ``c' x c'`` operator
    when ``T`` (``m x c'``) is set.  ``scale`` is a scalar, or one value per
    row for ``krdmd``.
    """

    method: str
    A: np.ndarray
    T: Optional[np.ndarray] = None
    iterations: int = 0
    converged: bool = True
    scale: object = None
    weights: Optional[OutlierReport] = None
    objective_trace: tuple = ()
    step_norms: tuple = ()
    config: Optional[HuberConfig] = None
    extras: dict = field(default_factory=dict)

    @property
    def is_reduced(self) -> bool:
        return self.T is not None

    @property
    def A_full(self) -> np.ndarray:
        """Operator acting on full-space snapshots (``T A T^+`` if reduced)."""
        if self.T is None:
            return self.A
        return self.T @ self.A @ np.linalg.pinv(self.T)

    def advance(self, x) -> np.ndarray:
        """One step ``x -> A x`` in the full space."""
        x = np.asarray(x, dtype=float)
        if self.T is None:
            return self.A @ x
        return self.T @ (self.A @ self._Tpinv() @ x)

    def _Tpinv(self):
        cache = self.extras.get("_T_pinv")
        if cache is None:
            cache = np.linalg.pinv(self.T)
            self.extras["_T_pinv"] = cache
        return cache

    def to_dict(self, dt: Optional[float] = None) -> dict:
        """JSON-ready dictionary; eigenvalues included when ``dt`` is given."""
        d = {
            "method": self.method,
            "shape": list(self.A.shape),
            "matrix": [float(v) for v in self.A.ravel(order="C")],
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "objective_trace": [float(v) for v in self.objective_trace],
            "step_norms": [float(v) for v in self.step_norms],
        }
        if self.T is not None:
            d["T_shape"] = list(self.T.shape)
            d["T"] = [float(v) for v in self.T.ravel(order="C")]
        if self.scale is None:
            d["scale"] = None
        elif np.ndim(self.scale) == 0:
            d["scale"] = float(self.scale)
        else:
            d["scale"] = [float(v) for v in np.ravel(self.scale)]
        d["weights"] = None if self.weights is None else [float(v) for v in self.weights.weights]
        if self.config is not None:
            d["config"] = self.config.to_dict()
        if dt is not None:
            from .modal import spectrum
            d["eigenvalues"] = spectrum(self, dt).to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "OperatorEstimate":
        A = np.asarray(d["matrix"], dtype=float).reshape(d["shape"])
        T = None
        if d.get("T") is not None:
            T = np.asarray(d["T"], dtype=float).reshape(d["T_shape"])
        scale = d.get("scale")
        if isinstance(scale, list):
            scale = np.asarray(scale, dtype=float)
        cfg = d.get("config")
        config = None
        if cfg:
            config = HuberConfig(delta=cfg["delta"], b=cfg["b"], irls_tol=cfg["tol"],
                                 max_iter=cfg["max_iter"], bm=cfg["bm"], gamma=cfg["gamma"],
                                 freeze_scale=cfg.get("freeze_scale", False),
                                 scale_estimator=cfg.get("scale_estimator", "s2"),
                                 dof=cfg.get("dof"), quantile=cfg.get("quantile", 0.975))
        return cls(d["method"], A, T, int(d["iterations"]), bool(d["converged"]), scale,
                   None, tuple(d.get("objective_trace", ())), tuple(d.get("step_norms", ())),
                   config)


# --------------------------------------------------------------------------- #
# Huber loss pieces

def huber_rho(r, delta=1.5):
    """Huber loss: ``r^2/2`` inside ``[-delta, delta]``, ``delta|r| - delta^2/2`` outside."""
    r = np.asarray(r, dtype=float)
    a = np.abs(r)
    out = np.where(a <= delta, 0.5 * r * r, delta * a - 0.5 * delta * delta)
    return out if out.ndim else float(out)


def huber_psi(r, delta=1.5):
    """Huber score: ``r`` inside the corner, ``delta * sign(r)`` outside."""
    r = np.asarray(r, dtype=float)
    out = np.where(np.abs(r) <= delta, r, delta * np.sign(r))
    return out if out.ndim else float(out)


def huber_weight(r, delta=1.5):
    """IRLS weight ``psi(r) / r``, equal to 1 at ``r = 0``."""
    a = np.abs(np.asarray(r, dtype=float))
    with np.errstate(divide="ignore", over="ignore"):
        out = np.where(a <= delta, 1.0, delta / np.where(a > 0, a, 1.0))
    return out if out.ndim else float(out)


def _robust_scale(mags, bm):
    m = np.asarray(mags, dtype=float).ravel()
    s = MAD_CONSTANT * bm * float(np.median(m))
    top = float(np.max(m)) if m.size else 0.0
    floor = 1e-12 * top if top > 0 else 1e-300
    if s < floor:
        return floor, True
    return s, False


def robust_scale(residual_magnitudes, bm: float = 1.0) -> float:
    """``1.4826 * bm * median |r|``, floored at ``1e-12 * max |r|`` (or 1e-300).

    Issues :class:`DegenerateScaleWarning` when the floor is used.
    """
    m = np.asarray(residual_magnitudes, dtype=float).ravel()
    if m.size == 0:
        raise DomainError("robust_scale needs at least one residual")
    if np.any(m < 0) or not np.all(np.isfinite(m)):
        raise DomainError("residual magnitudes must be finite and nonnegative")
    s, degenerate = _robust_scale(m, bm)
    if degenerate:
        warnings.warn(f"robust scale collapsed; using floor {s:.3g}",
                      DegenerateScaleWarning, stacklevel=2)
    return s


def ls_objective(pair: SnapshotPair, A) -> float:
    """``sum_k sum_i (r_k^[i])^2 / 2``."""
    R = residuals(pair, A).R
    return 0.5 * float(np.sum(R * R))


def _gm_objective(r_std, w, delta, s):
    # s^2 * J: the Huber objective in residual units, comparable across scale updates
    return s * s * float(np.sum(w * w * huber_rho(r_std, delta)))


# --------------------------------------------------------------------------- #
# Linear algebra helpers

class _RankTracker:
    def __init__(self, n_cols):
        self.n_cols = n_cols
        self.min_rank = n_cols

    def note(self, rank):
        self.min_rank = min(self.min_rank, int(rank))

    def warn(self, method):
        if self.min_rank < self.n_cols:
            warnings.warn(f"{method}: regression matrix rank {self.min_rank} < {self.n_cols}; "
                          "minimum-norm (pseudo-inverse) solution used", RankWarning, stacklevel=3)


def _lstsq(X, B, tracker):
    """Minimum-norm least-squares solution of ``X C = B`` via SVD."""
    C, _, rank, _ = np.linalg.lstsq(X, B, rcond=None)
    tracker.note(rank)
    return C


def _weighted_rows(design, target, q, tracker):
    """Solve ``min sum_k q_k ||target_k - design_k C||^2`` (rows indexed by k)."""
    sq = np.sqrt(q)[:, np.newaxis]
    return _lstsq(sq * design, sq * target, tracker)


def _check_pair(pair):
    if not isinstance(pair, SnapshotPair):
        raise MalformedInputError("expected a SnapshotPair")
    if pair.N < 1:
        raise InsufficientDataError("no snapshot columns")


def _resolve_report(pair, cfg, report):
    if report is None:
        report = snapshot_outlier_report(pair, scale=cfg.scale_estimator, b=cfg.b,
                                         dof=cfg.dof, quantile=cfg.quantile)
    if len(report) != pair.N:
        raise MalformedInputError(
            f"outlier report has {len(report)} weights for {pair.N} snapshot pairs")
    w = np.asarray(report.weights, dtype=float)
    if np.any(~(w > 0)) or np.any(w > 1):
        raise DomainError("weights must lie in (0, 1]")
    return report, w


# --------------------------------------------------------------------------- #
# Estimators

def exact_dmd(pair: SnapshotPair) -> OperatorEstimate:
    """Least-squares operator ``Yp Y^+`` (exact DMD)."""
    _check_pair(pair)
    tracker = _RankTracker(pair.m)
    A = _lstsq(pair.Y.T, pair.Yp.T, tracker).T
    tracker.warn("exact_dmd")
    return OperatorEstimate("dmd", A, objective_trace=(ls_objective(pair, A),),
                            extras={"rank": tracker.min_rank})


def _svd(Y):
    U, S, Vt = np.linalg.svd(Y, full_matrices=False)
    numerical = int(np.count_nonzero(S > SVD_RTOL * S[0])) if S.size and S[0] > 0 else 0
    return U, S, Vt, numerical


def standard_dmd(pair: SnapshotPair, rank: int) -> OperatorEstimate:
    """Projected operator ``U^* Yp V Sigma^-1`` from the rank-``rank`` SVD of ``Y``."""
    _check_pair(pair)
    rank = int(rank)
    if not 1 <= rank <= min(pair.m, pair.N):
        raise DomainError(f"rank must lie in [1, {min(pair.m, pair.N)}], got {rank}")
    U, S, Vt, numerical = _svd(pair.Y)
    if rank > numerical:
        raise TruncationError(
            f"requested rank {rank} exceeds numerical rank {numerical} of Y "
            f"(singular values below {SVD_RTOL:g} * sigma_max are excluded)")
    if numerical < min(pair.m, pair.N):
        warnings.warn(f"Y has numerical rank {numerical} < {min(pair.m, pair.N)}",
                      RankWarning, stacklevel=2)
    Ur, Sr, Vr = U[:, :rank], S[:rank], Vt[:rank].T
    At = Ur.T @ pair.Yp @ Vr / Sr
    return OperatorEstimate("standard", At, T=Ur, extras={"singular_values": S})


def _irls_loop(step, state0, cfg, objective_of, method):
    """Generic IRLS driver.

    ``step(state) -> new_state`` performs one reweighted solve,
    ``objective_of(state) -> (J, s)`` evaluates the objective.  Returns the
    final state, iteration count, converged flag, objective and step traces.
    """
    state = state0
    J, s = objective_of(state, None)
    trace = [J]
    steps = []
    converged = False
    it = 0
    s_frozen = s if cfg.freeze_scale else None
    while it < cfg.max_iter:
        new = step(state, s_frozen)
        delta = float(np.linalg.norm(new - state))
        steps.append(delta)
        state = new
        it += 1
        J, s = objective_of(state, s_frozen)
        trace.append(J)
        if delta <= cfg.irls_tol:
            converged = True
            break
    if not converged:
        warnings.warn(f"{method}: IRLS hit max_iter={cfg.max_iter} without meeting "
                      f"tol={cfg.irls_tol}", ConvergenceWarning, stacklevel=3)
    return state, it, converged, trace, steps, s


def nrdmd(pair: SnapshotPair, cfg: Optional[HuberConfig] = None,
          report: Optional[OutlierReport] = None) -> OperatorEstimate:
    """Robust DMD with the Huber loss applied to residual-vector norms.

    Iterates ``A <- Yp Q Y^T (Y Q Y^T)^-1`` with
    ``Q = diag(psi(|r_k| / (s w_k)) / (|r_k| / (s w_k)))`` starting from the
    least-squares estimate, re-estimating ``s`` from ``{|r_k|}`` each step.
    """
    _check_pair(pair)
    cfg = cfg or HuberConfig()
    report, w = _resolve_report(pair, cfg, report)
    Y, Yp = pair.Y, pair.Yp
    tracker = _RankTracker(pair.m)
    degenerate = []

    def scale_and_std(A, s_fixed):
        norms = np.linalg.norm(Yp - A @ Y, axis=0)
        if s_fixed is None:
            s, deg = _robust_scale(norms, cfg.bm)
            degenerate.append(deg)
        else:
            s = s_fixed
        return norms / (s * w), s

    def objective_of(A, s_fixed):
        rs, s = scale_and_std(A, s_fixed)
        return _gm_objective(rs, w, cfg.delta, s), s

    def step(A, s_fixed):
        rs, _ = scale_and_std(A, s_fixed)
        q = huber_weight(rs, cfg.delta)
        return _weighted_rows(Y.T, Yp.T, q, tracker).T

    A0 = _lstsq(Y.T, Yp.T, tracker).T
    A, it, conv, trace, steps, s = _irls_loop(step, A0, cfg, objective_of, "nrdmd")
    tracker.warn("nrdmd")
    if any(degenerate):
        warnings.warn("nrdmd: residual scale collapsed to its floor in at least one iteration",
                      DegenerateScaleWarning, stacklevel=2)
    return OperatorEstimate("nrdmd", A, None, it, conv, s, report, tuple(trace), tuple(steps),
                            cfg, {"rank": tracker.min_rank, "degenerate_scale": any(degenerate)})


def krdmd(pair: SnapshotPair, cfg: Optional[HuberConfig] = None,
          report: Optional[OutlierReport] = None) -> OperatorEstimate:
    """Robust DMD solving one Huber regression per row of ``A``.

    Row ``i`` iterates ``a_i <- (Y Q Y^T)^-1 Y Q y'_i`` with component
    residuals ``r_k^[i]`` standardised by a per-row scale.  Every row shares
    the same snapshot weights.  ``iterations`` is the largest per-row count.
    """
    _check_pair(pair)
    cfg = cfg or HuberConfig()
    report, w = _resolve_report(pair, cfg, report)
    Y, Yp = pair.Y, pair.Yp
    m = pair.m
    tracker = _RankTracker(m)
    A0 = _lstsq(Y.T, Yp.T, tracker).T
    rows = []
    scales = np.empty(m)
    row_traces = []
    row_steps = []
    its = []
    all_conv = True
    degenerate = False
    for i in range(m):
        target = Yp[i]
        flags = []

        def objective_of(a, s_fixed, target=target, flags=flags):
            r = target - a @ Y
            if s_fixed is None:
                s, deg = _robust_scale(np.abs(r), cfg.bm)
                flags.append(deg)
            else:
                s = s_fixed
            return _gm_objective(r / (s * w), w, cfg.delta, s), s

        def step(a, s_fixed, target=target, flags=flags):
            r = target - a @ Y
            if s_fixed is None:
                s, deg = _robust_scale(np.abs(r), cfg.bm)
                flags.append(deg)
            else:
                s = s_fixed
            q = huber_weight(r / (s * w), cfg.delta)
            return _weighted_rows(Y.T, target[:, np.newaxis], q, tracker)[:, 0]

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            a, it, conv, trace, steps, s = _irls_loop(step, A0[i].copy(), cfg, objective_of,
                                                      "krdmd")
        rows.append(a)
        scales[i] = s
        row_traces.append(trace)
        row_steps.append(steps)
        its.append(it)
        all_conv &= conv
        degenerate |= any(flags)
    tracker.warn("krdmd")
    if not all_conv:
        warnings.warn(f"krdmd: at least one row hit max_iter={cfg.max_iter}",
                      ConvergenceWarning, stacklevel=2)
    n_it = max(its)
    total = [sum(tr[min(t, len(tr) - 1)] for tr in row_traces) for t in range(n_it + 1)]
    # per global iteration, the largest step among rows still iterating
    steps = [max(st[t] for st in row_steps if t < len(st)) for t in range(n_it)]
    return OperatorEstimate("krdmd", np.vstack(rows), None, n_it, all_conv, scales, report,
                            tuple(total), tuple(steps), cfg,
                            {"rank": tracker.min_rank, "row_iterations": its,
                             "row_step_norms": row_steps, "degenerate_scale": degenerate})


def default_basis(pair: SnapshotPair, rank: int) -> np.ndarray:
    """Leading ``rank`` left singular vectors of ``Y``."""
    U, S, Vt, numerical = _svd(pair.Y)
    if not 1 <= rank <= numerical:
        raise TruncationError(f"rank {rank} outside [1, {numerical}] (numerical rank of Y)")
    return U[:, :rank]


def robust_standard_dmd(pair: SnapshotPair, T=None, cfg: Optional[HuberConfig] = None,
                        report: Optional[OutlierReport] = None,
                        rank: Optional[int] = None) -> OperatorEstimate:
    """Robust reduced operator ``A_tilde`` with ``A ~ T A_tilde T^+``.

    Iterates ``A_tilde <- T^+ Yp Q Y^T T (T^+ Y Q Y^T T + gamma^2 I)^-1`` with
    ``Q`` built from full-space residuals ``y_{k+1} - T A_tilde T^+ y_k``.  ``T``
    defaults to the rank-``rank`` left singular vectors of ``Y``; it must have
    fewer columns than rows, otherwise the weights cancel out.
    """
    _check_pair(pair)
    cfg = cfg or HuberConfig()
    if T is None:
        if rank is None:
            raise DomainError("robust_standard_dmd needs either T or rank")
        T = default_basis(pair, int(rank))
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != pair.m:
        raise MalformedInputError(f"T must be {pair.m} x c', got shape {T.shape}")
    c = T.shape[1]
    if c >= pair.m:
        raise RobustnessConditionError(
            f"T has {c} >= m = {pair.m} columns, so T T^+ = I and the weights cancel; "
            "choose a reduced basis with c' < m")
    if np.linalg.matrix_rank(T) < c:
        raise MalformedInputError("T must have full column rank")
    report, w = _resolve_report(pair, cfg, report)
    Y, Yp = pair.Y, pair.Yp
    Tp = np.linalg.pinv(T)
    X = Tp @ Y          # c' x N
    Xp = Tp @ Yp        # c' x N
    G = Y.T @ T         # N x c'
    if cfg.gamma is None:
        gamma2 = 1e-6 * float(np.trace(X @ G)) / c
    else:
        gamma2 = float(cfg.gamma) ** 2
    eye = np.eye(c)
    singular = []

    def solve(q):
        lhs = (X * q) @ G + gamma2 * eye
        rhs = (Xp * q) @ G
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
                return scipy.linalg.solve(lhs.T, rhs.T, assume_a="gen").T
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning):
            singular.append(True)
            return rhs @ np.linalg.pinv(lhs)

    degenerate = []

    def scale_and_std(At, s_fixed):
        norms = np.linalg.norm(Yp - T @ (At @ X), axis=0)
        if s_fixed is None:
            s, deg = _robust_scale(norms, cfg.bm)
            degenerate.append(deg)
        else:
            s = s_fixed
        return norms / (s * w), s

    def objective_of(At, s_fixed):
        rs, s = scale_and_std(At, s_fixed)
        reg = 0.5 * gamma2 * float(np.sum(At * At))
        return _gm_objective(rs, w, cfg.delta, s) + reg, s

    def step(At, s_fixed):
        rs, _ = scale_and_std(At, s_fixed)
        return solve(huber_weight(rs, cfg.delta))

    A0 = solve(np.ones(pair.N))
    At, it, conv, trace, steps, s = _irls_loop(step, A0, cfg, objective_of,
                                               "robust_standard_dmd")
    if singular:
        warnings.warn("robust_standard_dmd: regularised normal matrix singular; "
                      "pseudo-inverse used", RankWarning, stacklevel=2)
    return OperatorEstimate("robust-standard", At, T, it, conv, s, report, tuple(trace),
                            tuple(steps), cfg,
                            {"gamma2": gamma2, "degenerate_scale": any(degenerate)})


METHODS = ("dmd", "standard", "krdmd", "nrdmd", "robust-standard")


def fit(pair: SnapshotPair, method: str, cfg: Optional[HuberConfig] = None,
        report: Optional[OutlierReport] = None, rank: Optional[int] = None) -> OperatorEstimate:
    """Dispatch to an estimator by its method tag."""
    cfg = cfg or HuberConfig()
    if method == "dmd":
        return exact_dmd(pair)
    if method == "standard":
        if rank is None:
            raise DomainError("method 'standard' needs a rank")
        return standard_dmd(pair, rank)
    if method == "krdmd":
        return krdmd(pair, cfg, report)
    if method == "nrdmd":
        return nrdmd(pair, cfg, report)
    if method == "robust-standard":
        return robust_standard_dmd(pair, None, cfg, report, rank=rank)
    raise DomainError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
