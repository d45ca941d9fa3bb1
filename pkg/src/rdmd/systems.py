"""Benchmark dynamical systems, RK4 simulation and data contamination."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DivergenceError, DomainError, MalformedInputError
from .rng import Stream
from .snapshots import TimeSeries

__all__ = [
    "BenchmarkSystem",
    "LinearSystem",
    "RingOscillators",
    "SlowManifold",
    "VanDerPol",
    "RandomLinear",
    "GeneralizedSlowManifold",
    "make_system",
    "SYSTEMS",
    "rk4_step",
    "simulate",
    "OutlierWindow",
    "SpikeModel",
    "ContaminationPlan",
    "contaminate",
    "window_mask",
]

LINEAR2X2 = ((-1.0, -3.0), (1.0, 1.0))
OSCILLATOR2X2 = ((1.0, -2.0), (1.0, -1.0))


class BenchmarkSystem:
    """Autonomous ODE ``x' = f(x)``; subclasses define ``rhs`` and ``dim``."""

    name = "system"

    @property
    def dim(self) -> int:
        raise NotImplementedError

    def rhs(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def default_x0(self) -> np.ndarray:
        return np.ones(self.dim)

    def labels(self):
        return [f"x{i + 1}" for i in range(self.dim)]

    def params(self) -> dict:
        return {}

    def matrix(self) -> Optional[np.ndarray]:
        """System matrix for linear systems, else ``None``."""
        return None


@dataclass
class LinearSystem(BenchmarkSystem):
    """``x' = Theta x`` for a constant square matrix."""

    theta: np.ndarray = field(default_factory=lambda: np.array(LINEAR2X2))
    name: str = "linear2x2"

    def __post_init__(self):
        self.theta = np.asarray(self.theta, dtype=float)
        if self.theta.ndim != 2 or self.theta.shape[0] != self.theta.shape[1]:
            raise MalformedInputError(f"Theta must be square, got shape {self.theta.shape}")

    @property
    def dim(self):
        return self.theta.shape[0]

    def rhs(self, x):
        return self.theta @ x

    def default_x0(self):
        x0 = np.zeros(self.dim)
        x0[0] = 1.0
        return x0

    def matrix(self):
        return self.theta

    def params(self):
        return {"theta": self.theta.tolist()}


@dataclass
class RingOscillators(BenchmarkSystem):
    """``s`` oscillators on a ring: ``theta' = omega``, ``omega' = -(L + D) theta``.

    ``L`` is the cyclic graph Laplacian (2 on the diagonal, -1 for the two
    neighbours) and ``D = d I``.  ``velocity_damping=True`` applies ``D`` to
    ``omega`` instead.  The state is ``[theta; omega]`` (``m = 2s``).
    """

    s: int = 15
    d: float = 0.05
    velocity_damping: bool = False
    seed: int = 0
    name: str = "ring"

    def __post_init__(self):
        if self.s < 3:
            raise DomainError(f"ring needs s >= 3 oscillators, got {self.s}")
        s = self.s
        L = 2.0 * np.eye(s) - np.roll(np.eye(s), 1, axis=1) - np.roll(np.eye(s), -1, axis=1)
        D = self.d * np.eye(s)
        top = np.hstack([np.zeros((s, s)), np.eye(s)])
        if self.velocity_damping:
            bottom = np.hstack([-L, -D])
        else:
            bottom = np.hstack([-(L + D), np.zeros((s, s))])
        self._theta = np.vstack([top, bottom])

    @property
    def dim(self):
        return 2 * self.s

    def rhs(self, x):
        return self._theta @ x

    def matrix(self):
        return self._theta

    def default_x0(self):
        # angles ~ N(0, 0.1^2) from the seed, zero velocities
        x0 = np.zeros(self.dim)
        x0[:self.s] = 0.1 * Stream(self.seed, "ring-x0").normal(self.s)
        return x0

    def labels(self):
        return ([f"theta{k + 1}" for k in range(self.s)]
                + [f"omega{k + 1}" for k in range(self.s)])

    def params(self):
        return {"s": self.s, "d": self.d, "velocity_damping": self.velocity_damping,
                "seed": self.seed}


@dataclass
class SlowManifold(BenchmarkSystem):
    """``x1' = mu x1``, ``x2' = lam (x2 - x1^2)``."""

    mu: float = -0.05
    lam: float = -1.0
    name: str = "slow-manifold"

    @property
    def dim(self):
        return 2

    def rhs(self, x):
        return np.array([self.mu * x[0], self.lam * (x[1] - x[0] ** 2)])

    def default_x0(self):
        return np.array([1.0, 2.0])

    def params(self):
        return {"mu": self.mu, "lam": self.lam}


@dataclass
class VanDerPol(BenchmarkSystem):
    """``x1' = x2``, ``x2' = mu (1 - x1^2) x2 - x1``.

    ``literal=True`` drops the ``-x1`` restoring term.
    """

    mu: float = 1.0
    literal: bool = False
    name: str = "vanderpol"

    @property
    def dim(self):
        return 2

    def rhs(self, x):
        f2 = self.mu * (1.0 - x[0] ** 2) * x[1]
        if not self.literal:
            f2 = f2 - x[0]
        return np.array([x[1], f2])

    def default_x0(self):
        return np.array([2.0, 0.0])

    def params(self):
        return {"mu": self.mu, "literal": self.literal}


@dataclass
class RandomLinear(BenchmarkSystem):
    """``x' = (G - h I) x`` with ``G`` standard normal and ``h`` = abscissa(G) + 0.5."""

    m: int = 50
    seed: int = 0
    margin: float = 0.5
    name: str = "random-linear"

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        G = Stream(self.seed, "random-linear-G").normal((self.m, self.m))
        h = float(np.max(np.linalg.eigvals(G).real)) + self.margin
        self._theta = G - h * np.eye(self.m)

    @property
    def dim(self):
        return self.m

    def rhs(self, x):
        return self._theta @ x

    def matrix(self):
        return self._theta

    def default_x0(self):
        return Stream(self.seed, "random-linear-x0").normal(self.m)

    def params(self):
        return {"m": self.m, "seed": self.seed, "margin": self.margin}


@dataclass
class GeneralizedSlowManifold(BenchmarkSystem):
    """``x1' = W x1``, ``x2' = -(x2 - P(x1))`` with ``P_i(x1) = (sum_j x1_j)^2``.

    ``x1, x2`` have ``m / 2`` entries; ``W = diag(mu_i)`` with
    ``mu_i ~ -U(mu_low, mu_high)`` drawn from the seed.  The fast block uses
    ``Lambda = I`` with the stable sign.  ``active`` limits how many entries of
    ``x1`` the default initial condition excites (``None``: all).
    """

    m: int = 40
    seed: int = 0
    mu_low: float = 0.05
    mu_high: float = 0.5
    active: Optional[int] = None
    name: str = "generalized-slow-manifold"

    def __post_init__(self):
        if self.m < 2 or self.m % 2:
            raise DomainError(f"m must be even and >= 2, got {self.m}")
        if not 0 <= self.mu_low <= self.mu_high:
            raise DomainError("need 0 <= mu_low <= mu_high")
        h = self.m // 2
        u = Stream(self.seed, "gsm-mu").uniform(h)
        self.mu = -(self.mu_low + (self.mu_high - self.mu_low) * u)

    @property
    def dim(self):
        return self.m

    def rhs(self, x):
        h = self.m // 2
        x1, x2 = x[:h], x[h:]
        P = np.full(h, np.sum(x1) ** 2)
        return np.concatenate([self.mu * x1, -(x2 - P)])

    def default_x0(self):
        h = self.m // 2
        x0 = np.zeros(self.m)
        n = h if self.active is None else int(self.active)
        x0[:n] = 1.0 / max(n, 1)
        return x0

    def labels(self):
        h = self.m // 2
        return [f"x1_{i + 1}" for i in range(h)] + [f"x2_{i + 1}" for i in range(h)]

    def params(self):
        return {"m": self.m, "seed": self.seed, "mu_low": self.mu_low,
                "mu_high": self.mu_high, "active": self.active}


SYSTEMS = {
    "linear2x2": lambda **kw: LinearSystem(np.array(LINEAR2X2), "linear2x2"),
    "oscillator": lambda **kw: LinearSystem(np.array(OSCILLATOR2X2), "oscillator"),
    "ring": RingOscillators,
    "slow-manifold": SlowManifold,
    "vanderpol": VanDerPol,
    "random-linear": RandomLinear,
    "generalized-slow-manifold": GeneralizedSlowManifold,
}


def make_system(name: str, **params) -> BenchmarkSystem:
    """Instantiate a benchmark system by name; unknown parameters raise."""
    try:
        factory = SYSTEMS[name]
    except KeyError:
        raise DomainError(f"unknown system {name!r}; choose from {', '.join(SYSTEMS)}") from None
    if name in ("linear2x2", "oscillator"):
        if params:
            raise DomainError(f"system {name!r} takes no parameters, got {sorted(params)}")
        return factory()
    try:
        return factory(**params)
    except TypeError as exc:
        raise DomainError(f"bad parameters for {name!r}: {exc}") from None


def rk4_step(f, x, h):
    """One classical fourth-order Runge-Kutta step."""
    k1 = f(x)
    k2 = f(x + 0.5 * h * k1)
    k3 = f(x + 0.5 * h * k2)
    k4 = f(x + h * k3)
    return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def simulate(system: BenchmarkSystem, x0=None, dt: float = 0.01, steps: int = 500) -> TimeSeries:
    """Integrate ``system`` with fixed-step RK4; returns ``steps + 1`` samples."""
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    x = system.default_x0() if x0 is None else np.asarray(x0, dtype=float).ravel()
    if x.shape[0] != system.dim:
        raise MalformedInputError(f"x0 has dimension {x.shape[0]}, system needs {system.dim}")
    X = np.empty((system.dim, steps + 1))
    X[:, 0] = x
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            x = rk4_step(system.rhs, x, dt)
            if not np.all(np.isfinite(x)):
                raise DivergenceError(f"integration diverged at step {k + 1}", step=k + 1)
            X[:, k + 1] = x
    return TimeSeries(X, dt, 0.0, system.labels())


# --------------------------------------------------------------------------- #
# Contamination

@dataclass(frozen=True)
class OutlierWindow:
    """Add ``magnitude`` to every channel of samples with ``t_start <= t <= t_end``."""

    t_start: float
    t_end: float
    magnitude: float


@dataclass(frozen=True)
class SpikeModel:
    """Additive ``eta * w(t) + mu * s(t)``, ``s`` entries Bernoulli(p) x N(0, 1)."""

    mu: float = 1.0
    p: float = 0.05
    eta: float = 0.0


NOISE_KINDS = ("none", "gaussian", "laplace", "student_t", "cauchy")


@dataclass(frozen=True)
class ContaminationPlan:
    """Outliers and noise applied to a clean series.

    ``noise_param`` depends on ``noise_kind``: the variance for ``gaussian``
    and ``laplace``, the degrees of freedom for ``student_t`` and the
    half-width ``gamma`` for ``cauchy``.  ``gaussian_sigma`` adds an independent
    Gaussian floor of that standard deviation.
    """

    gaussian_sigma: float = 0.0
    noise_kind: str = "none"
    noise_param: Optional[float] = None
    windows: Sequence[OutlierWindow] = ()
    spike: Optional[SpikeModel] = None
    seed: int = 0

    def __post_init__(self):
        if self.noise_kind not in NOISE_KINDS:
            raise DomainError(f"unknown noise kind {self.noise_kind!r}; use one of {NOISE_KINDS}")
        if self.noise_kind != "none" and not (self.noise_param and self.noise_param > 0):
            raise DomainError(f"noise kind {self.noise_kind!r} needs a positive noise_param")
        if self.gaussian_sigma < 0:
            raise DomainError("gaussian_sigma must be >= 0")
        if self.spike is not None and not 0.0 <= self.spike.p <= 1.0:
            raise DomainError(f"spike rate p must lie in [0, 1], got {self.spike.p}")
        object.__setattr__(self, "windows", tuple(
            w if isinstance(w, OutlierWindow) else OutlierWindow(*w) for w in self.windows))

    def to_dict(self) -> dict:
        return {
            "gaussian_sigma": self.gaussian_sigma,
            "noise_kind": self.noise_kind,
            "noise_param": self.noise_param,
            "windows": [[w.t_start, w.t_end, w.magnitude] for w in self.windows],
            "spike": None if self.spike is None else
            {"mu": self.spike.mu, "p": self.spike.p, "eta": self.spike.eta},
            "seed": self.seed,
        }


def window_mask(series: TimeSeries, t_start: float, t_end: float) -> np.ndarray:
    """Boolean mask of samples inside ``[t_start, t_end]`` (endpoints inclusive)."""
    t = series.times
    eps = 1e-9 * series.dt
    return (t >= t_start - eps) & (t <= t_end + eps)


def contaminate(series: TimeSeries, plan: ContaminationPlan) -> TimeSeries:
    """Apply ``plan`` to ``series``; deterministic given ``plan.seed``."""
    X = np.array(series.states, dtype=float, copy=True)
    t = series.times
    eps = 1e-9 * series.dt
    for w in plan.windows:
        if w.t_end < w.t_start:
            raise DomainError(f"window end {w.t_end} precedes start {w.t_start}")
        if w.t_start < t[0] - eps or w.t_end > t[-1] + eps:
            raise DomainError(
                f"window [{w.t_start}, {w.t_end}] outside series horizon [{t[0]}, {t[-1]}]")
        X[:, window_mask(series, w.t_start, w.t_end)] += w.magnitude
    shape = X.shape
    kind, par = plan.noise_kind, plan.noise_param
    if kind != "none":
        st = Stream(plan.seed, f"noise-{kind}")
        if kind == "gaussian":
            X += math.sqrt(par) * st.normal(shape)
        elif kind == "laplace":
            X += st.laplace(shape, scale=math.sqrt(par / 2.0))
        elif kind == "student_t":
            X += st.student_t(shape, par)
        elif kind == "cauchy":
            X += st.cauchy(shape, gamma=par)
    if plan.gaussian_sigma > 0:
        X += plan.gaussian_sigma * Stream(plan.seed, "gaussian-floor").normal(shape)
    if plan.spike is not None:
        sp = plan.spike
        if sp.eta > 0:
            X += sp.eta * Stream(plan.seed, "spike-base").normal(shape)
        hits = Stream(plan.seed, "spike-bernoulli").bernoulli(shape, sp.p)
        X += sp.mu * hits * Stream(plan.seed, "spike-size").normal(shape)
    return series.replace_states(X)
