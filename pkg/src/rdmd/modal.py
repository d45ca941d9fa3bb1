"""Eigenstructure of fitted operators, reconstruction and error metrics."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, MalformedInputError
from .snapshots import TimeSeries

__all__ = ["Spectrum", "ReconstructionResult", "spectrum", "to_continuous",
           "reconstruct", "mode_amplitudes"]


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Discrete and continuous eigenvalues with the matching modes (columns)."""

    eig_discrete: np.ndarray
    eig_continuous: np.ndarray
    modes: np.ndarray
    dt: float

    def to_dict(self) -> dict:
        def pairs(vals):
            out = []
            for v in vals:
                if np.isneginf(v.real):
                    out.append(None)
                else:
                    out.append({"re": float(v.real), "im": float(v.imag)})
            return out
        return {"dt": self.dt, "discrete": pairs(self.eig_discrete),
                "continuous": pairs(self.eig_continuous)}


def to_continuous(eig_discrete, dt: float) -> np.ndarray:
    """``log(lambda) / dt`` on the principal branch; zero maps to ``-inf``."""
    lam = np.asarray(eig_discrete, dtype=complex)
    out = np.empty_like(lam)
    zero = lam == 0
    with np.errstate(divide="ignore"):
        out[~zero] = np.log(lam[~zero]) / dt
    out[zero] = complex(-np.inf, 0.0)
    finite = ~zero
    assert np.all(np.abs(out[finite].imag) <= np.pi / dt * (1 + 1e-12))
    return out


def spectrum(est, dt: float) -> Spectrum:
    """Eigendecomposition of a fitted operator, sorted by descending modulus.

    Ties in modulus are broken by descending imaginary part.  For reduced
    estimates the modes are lifted to the full space by ``T``.
    """
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    A = np.asarray(getattr(est, "A", est), dtype=float)
    if not np.all(np.isfinite(A)):
        raise DomainError("operator has non-finite entries")
    lam, V = np.linalg.eig(A)
    order = np.lexsort((-lam.imag, -np.abs(lam)))
    lam, V = lam[order], V[:, order]
    T = getattr(est, "T", None)
    if T is not None:
        V = np.asarray(T) @ V
    return Spectrum(lam, to_continuous(lam, dt), V, float(dt))


def mode_amplitudes(spec: Spectrum, x0) -> np.ndarray:
    """Least-squares amplitudes ``b`` with ``modes @ b ~ x0``."""
    b, *_ = np.linalg.lstsq(spec.modes, np.asarray(x0, dtype=complex), rcond=None)
    return b


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    """Reconstructed trajectory (``m x (steps + 1)``) and its running error."""

    trajectory: np.ndarray
    cumulative_error: Optional[np.ndarray]
    mode: str

    @property
    def final_error(self) -> float:
        if self.cumulative_error is None:
            return float("nan")
        return float(self.cumulative_error[-1])

    def to_timeseries(self, dt: float, t0: float = 0.0, labels=None) -> TimeSeries:
        return TimeSeries(self.trajectory, dt, t0, labels)


def _truth_matrix(truth, m, steps):
    X = truth.states if isinstance(truth, TimeSeries) else np.asarray(truth, dtype=float)
    if X.ndim != 2 or X.shape[0] != m:
        raise DomainError(f"truth must have {m} channels, got shape {X.shape}")
    if X.shape[1] < steps + 1:
        raise DomainError(f"truth has {X.shape[1]} samples, need {steps + 1}")
    return X[:, :steps + 1]


def reconstruct(est, x0, steps: int, mode: str = "free_run", truth=None) -> ReconstructionResult:
    """Propagate a fitted operator and accumulate the error against ``truth``.

    ``free_run`` iterates ``x_{k+1} = A x_k`` from ``x0``; ``one_step``
    predicts each sample from the previous true sample.
    """
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    if mode not in ("free_run", "one_step"):
        raise DomainError(f"mode must be 'free_run' or 'one_step', got {mode!r}")
    x0 = np.asarray(x0, dtype=float).ravel()
    m = est.T.shape[0] if getattr(est, "T", None) is not None else np.asarray(est.A).shape[0]
    if x0.shape[0] != m:
        raise MalformedInputError(f"x0 has dimension {x0.shape[0]}, operator acts on {m}")
    X = None
    if truth is not None:
        X = _truth_matrix(truth, m, steps)
    elif mode == "one_step":
        raise DomainError("one_step reconstruction needs the true snapshots")
    traj = np.empty((m, steps + 1))
    traj[:, 0] = x0
    if mode == "free_run":
        for k in range(steps):
            traj[:, k + 1] = est.advance(traj[:, k])
    else:
        if est.T is None:
            traj[:, 1:] = est.A @ X[:, :steps]
        else:
            traj[:, 1:] = est.T @ (est.A @ (np.linalg.pinv(est.T) @ X[:, :steps]))
    cum = None
    if X is not None:
        cum = np.cumsum(np.linalg.norm(traj - X, axis=0))
    return ReconstructionResult(traj, cum, mode)
