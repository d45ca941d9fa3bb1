"""Spec-driven experiment pipeline: simulate, contaminate, fit, compare.

An experiment spec is a plain ``key = value`` text file::

    # linear system with two outlier windows
    system = linear2x2
    dt = 0.01
    steps = 500
    x0 = 1, 0
    seed = 0
    window = 1.0, 1.05, 0.3
    window = 2.0, 2.05, 0.3
    methods = dmd, nrdmd

System parameters use a ``system.`` prefix (``system.s = 15``).  ``window``
may be repeated.  Every run writes ``spec_resolved.txt`` with all defaults
filled in; its SHA-256 is the spec hash recorded in the manifest.

All randomness flows from ``seed`` (overridden by the ``RDMD_SEED``
environment variable); each stage draws from its own derived seed so adding a
stage never shifts the numbers of another.
"""
from __future__ import annotations

import csv
import hashlib
import inspect
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, MalformedInputError, ParseError
from .estimators import METHODS, HuberConfig, OperatorEstimate, fit
from .modal import reconstruct, spectrum
from .rng import Stream
from .robust_stats import snapshot_outlier_report
from .snapshots import SnapshotPair, TimeSeries, build_pair, write_csv
from .systems import (NOISE_KINDS, SYSTEMS, ContaminationPlan, OutlierWindow, SpikeModel,
                      contaminate, make_system, simulate)

__all__ = ["SCHEMA_VERSION", "ExperimentSpec", "RunManifest", "derive_seed", "seed_from_env",
           "dump_json", "load_json", "fit_and_write", "load_estimate", "compare_methods",
           "write_comparison", "run_experiment", "tool_version"]

SCHEMA_VERSION = 1
ROBUST_METHODS = ("krdmd", "nrdmd", "robust-standard")


def tool_version() -> str:
    from . import __version__
    return __version__


def derive_seed(seed: int, stage: str) -> int:
    """Deterministic 63-bit sub-seed for a named pipeline stage."""
    return int(Stream(seed, f"stage:{stage}").raw(1)[0] >> np.uint64(1))


def seed_from_env(seed: int) -> int:
    """``RDMD_SEED`` wins over the configured seed when set."""
    raw = os.environ.get("RDMD_SEED")
    if raw is None or raw.strip() == "":
        return int(seed)
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"RDMD_SEED must be a nonnegative integer, got {raw!r}") from None
    if value < 0:
        raise DomainError(f"RDMD_SEED must be a nonnegative integer, got {raw!r}")
    return value


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not np.isfinite(obj):
        return None
    return obj


def dump_json(obj: dict, path) -> Path:
    """Write JSON with a ``schema_version`` field, sorted keys, trailing newline."""
    data = dict(_clean(obj))
    data.setdefault("schema_version", SCHEMA_VERSION)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n")
    return path


def load_json(path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", row=exc.lineno, column=exc.colno) from None
    if not isinstance(data, dict):
        raise MalformedInputError(f"{path}: expected a JSON object")
    return data


# --------------------------------------------------------------------------- #
# Spec

def _floats(text: str, key: str) -> List[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise DomainError(f"{key}: expected comma-separated numbers, got {text!r}") from None


def _scalar(text: str):
    t = text.strip()
    low = t.lower()
    if low in ("none", "null", ""):
        return None
    if low in ("true", "false"):
        return low == "true"
    for conv in (int, float):
        try:
            return conv(t)
        except ValueError:
            pass
    return t


def _fmt_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return ", ".join(_fmt_value(x) for x in v)
    return str(v)


@dataclass
class ExperimentSpec:
    """Everything needed to reproduce one experiment."""

    system: str = "linear2x2"
    system_params: Dict[str, object] = field(default_factory=dict)
    dt: float = 0.01
    steps: int = 500
    x0: Optional[List[float]] = None
    seed: int = 0
    noise: str = "none"
    noise_param: Optional[float] = None
    gaussian_sigma: float = 0.0
    windows: List[Tuple[float, float, float]] = field(default_factory=list)
    spike: Optional[Tuple[float, float, float]] = None
    methods: List[str] = field(default_factory=lambda: ["dmd", "nrdmd"])
    rank: Optional[int] = None
    delta: float = 1.5
    b: float = 1.5
    tol: float = 0.01
    max_iter: int = 50
    bm: float = 1.0
    scale: str = "s2"
    dof: Optional[int] = None
    gamma: Optional[float] = None
    reconstruct: str = "free_run"
    out: str = "rdmd-run"

    _SCALAR_KEYS = ("system", "dt", "steps", "seed", "noise", "noise_param", "gaussian_sigma",
                    "rank", "delta", "b", "tol", "max_iter", "bm", "scale", "dof", "gamma",
                    "reconstruct", "out")

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.system not in SYSTEMS:
            raise DomainError(f"unknown system {self.system!r}; choose from {', '.join(SYSTEMS)}")
        if not self.dt > 0:
            raise DomainError(f"dt must be positive, got {self.dt}")
        if int(self.steps) != self.steps or self.steps < 1:
            raise DomainError(f"steps must be a positive integer, got {self.steps}")
        if self.noise not in NOISE_KINDS:
            raise DomainError(f"unknown noise {self.noise!r}; use one of {', '.join(NOISE_KINDS)}")
        bad = [m for m in self.methods if m not in METHODS]
        if bad or not self.methods:
            raise DomainError(f"unknown methods {bad}; choose from {', '.join(METHODS)}")
        if self.reconstruct not in ("free_run", "one_step"):
            raise DomainError("reconstruct must be free_run or one_step")
        if int(self.seed) != self.seed or self.seed < 0:
            raise DomainError(f"seed must be a nonnegative integer, got {self.seed}")
        self.huber_config()
        self.plan()

    # -- text format ---------------------------------------------------------
    @classmethod
    def from_text(cls, text: str) -> "ExperimentSpec":
        kw: dict = {"system_params": {}, "windows": []}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}",
                                 row=lineno)
            key, value = (s.strip() for s in line.split("=", 1))
            if key.startswith("system."):
                kw["system_params"][key[len("system."):]] = _scalar(value)
            elif key == "window":
                w = _floats(value, key)
                if len(w) != 3:
                    raise ParseError(f"line {lineno}: window needs t_start, t_end, magnitude",
                                     row=lineno)
                kw["windows"].append(tuple(w))
            elif key == "spike" and value.lower() == "none":
                kw["spike"] = None
            elif key == "spike":
                s = _floats(value, key)
                if len(s) != 3:
                    raise ParseError(f"line {lineno}: spike needs mu, p, eta", row=lineno)
                kw["spike"] = tuple(s)
            elif key == "x0":
                kw["x0"] = None if value.lower() == "none" else _floats(value, key)
            elif key == "methods":
                kw["methods"] = [m.strip() for m in value.split(",") if m.strip()]
            elif key in cls._SCALAR_KEYS:
                kw[key] = _scalar(value)
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}", row=lineno)
        for key in ("dt", "tol", "delta", "b", "bm", "gaussian_sigma"):
            if key in kw and kw[key] is not None:
                kw[key] = float(kw[key])
        for key in ("noise_param", "gamma"):
            if kw.get(key) is not None:
                kw[key] = float(kw[key])
        if "system" in kw:
            kw["system"] = str(kw["system"])
        if "out" in kw:
            kw["out"] = str(kw["out"])
        if "noise" in kw:
            kw["noise"] = "none" if kw["noise"] is None else str(kw["noise"])
        return cls(**kw)

    @classmethod
    def from_file(cls, path) -> "ExperimentSpec":
        return cls.from_text(Path(path).read_text())

    def resolved_text(self) -> str:
        """Canonical text with every default filled in."""
        lines = [f"system = {self.system}"]
        for k in sorted(self.resolved_system_params()):
            lines.append(f"system.{k} = {_fmt_value(self.resolved_system_params()[k])}")
        lines += [
            f"dt = {_fmt_value(float(self.dt))}",
            f"steps = {int(self.steps)}",
            f"x0 = {_fmt_value(self.x0)}",
            f"seed = {int(self.seed)}",
            f"noise = {self.noise}",
            f"noise_param = {_fmt_value(self.noise_param)}",
            f"gaussian_sigma = {_fmt_value(float(self.gaussian_sigma))}",
        ]
        lines += [f"window = {_fmt_value([float(v) for v in w])}" for w in self.windows]
        lines.append(f"spike = {_fmt_value(None if self.spike is None else [float(v) for v in self.spike])}")
        lines += [
            f"methods = {', '.join(self.methods)}",
            f"rank = {_fmt_value(self.rank)}",
            f"delta = {_fmt_value(float(self.delta))}",
            f"b = {_fmt_value(float(self.b))}",
            f"tol = {_fmt_value(float(self.tol))}",
            f"max_iter = {int(self.max_iter)}",
            f"bm = {_fmt_value(float(self.bm))}",
            f"scale = {self.scale}",
            f"dof = {_fmt_value(self.dof)}",
            f"gamma = {_fmt_value(self.gamma)}",
            f"reconstruct = {self.reconstruct}",
            f"out = {self.out}",
        ]
        return "\n".join(lines) + "\n"

    def spec_hash(self) -> str:
        return hashlib.sha256(self.resolved_text().encode("utf-8")).hexdigest()

    # -- derived objects -----------------------------------------------------
    def resolved_system_params(self) -> dict:
        params = dict(self.system_params)
        factory = SYSTEMS[self.system]
        if isinstance(factory, type):
            names = inspect.signature(factory).parameters
            if "seed" in names and "seed" not in params:
                params["seed"] = derive_seed(self.seed, "system")
        return params

    def make_system(self):
        return make_system(self.system, **self.resolved_system_params())

    def huber_config(self) -> HuberConfig:
        return HuberConfig(delta=float(self.delta), b=float(self.b), irls_tol=float(self.tol),
                           max_iter=int(self.max_iter), bm=float(self.bm), gamma=self.gamma,
                           scale_estimator=self.scale, dof=self.dof)

    def plan(self) -> ContaminationPlan:
        spike = None if self.spike is None else SpikeModel(*self.spike)
        return ContaminationPlan(gaussian_sigma=float(self.gaussian_sigma), noise_kind=self.noise,
                                 noise_param=self.noise_param,
                                 windows=[OutlierWindow(*w) for w in self.windows],
                                 spike=spike, seed=derive_seed(self.seed, "contaminate"))


@dataclass
class RunManifest:
    """What a run produced.  Timings live apart from the reproducible part."""

    spec_hash: str
    inputs: List[str]
    outputs: List[str]
    results: Dict[str, dict]
    timings: Dict[str, float]
    version: str = field(default_factory=tool_version)

    def to_dict(self) -> dict:
        return {"spec_hash": self.spec_hash, "inputs": list(self.inputs),
                "outputs": list(self.outputs), "results": self.results,
                "tool_version": self.version, "timings_file": "timings.json"}

    def write(self, out_dir) -> Tuple[Path, Path]:
        out_dir = Path(out_dir)
        m = dump_json(self.to_dict(), out_dir / "manifest.json")
        t = dump_json({"unit": "s", "wall_clock": {k: float(v) for k, v in self.timings.items()}},
                      out_dir / "timings.json")
        return m, t


# --------------------------------------------------------------------------- #
# Fitting and comparison

def fit_and_write(pair: SnapshotPair, method: str, cfg: HuberConfig, out_dir,
                  rank: Optional[int] = None) -> Tuple[OperatorEstimate, List[Path], float]:
    """Fit one method and write its estimate, spectrum and (robust) outlier report.

    Returns the estimate, the written paths and the wall-clock time of the fit
    (projection statistics included).
    """
    out_dir = Path(out_dir)
    report = None
    t0 = time.perf_counter()
    if method in ROBUST_METHODS:
        report = snapshot_outlier_report(pair, cfg.scale_estimator, cfg.b, cfg.dof, cfg.quantile)
    est = fit(pair, method, cfg, report, rank=rank)
    elapsed = time.perf_counter() - t0
    written = []
    est_dict = est.to_dict(pair.dt)
    est_dict["dt"] = pair.dt
    written.append(dump_json(est_dict, out_dir / "estimate.json"))
    spec = spectrum(est, pair.dt).to_dict()
    spec["method"] = method
    written.append(dump_json(spec, out_dir / "spectrum.json"))
    if report is not None:
        written.append(dump_json(report.to_dict(), out_dir / "outliers.json"))
    return est, written, elapsed


def load_estimate(path) -> Tuple[OperatorEstimate, float]:
    """Read ``estimate.json`` (or a directory holding one); returns estimate and dt."""
    path = Path(path)
    if path.is_dir():
        path = path / "estimate.json"
    d = load_json(path)
    for key in ("method", "matrix", "shape", "dt"):
        if key not in d:
            raise MalformedInputError(f"{path}: missing {key!r}")
    return OperatorEstimate.from_dict(d), float(d["dt"])


COMPARISON_COLUMNS = ("method", "iterations", "converged", "eig1_re", "eig1_im",
                      "eig2_re", "eig2_im", "final_cum_err")


def _num(x) -> str:
    return format(float(x), ".17g")


def compare_methods(truth: TimeSeries, estimates: Sequence[Tuple[str, OperatorEstimate, float]],
                    mode: str = "free_run"):
    """Reconstruct every estimate against ``truth``.

    Returns ``(rows, trajectories)``; rows follow :data:`COMPARISON_COLUMNS`
    and trajectories map label to the reconstructed ``m x (N + 1)`` array.
    """
    rows, trajs = [], {}
    steps = truth.n_samples - 1
    for label, est, dt in estimates:
        if not np.isclose(dt, truth.dt, rtol=1e-9, atol=0.0):
            raise DomainError(f"{label}: estimate dt {dt} does not match truth dt {truth.dt}")
        rec = reconstruct(est, truth.states[:, 0], steps, mode=mode, truth=truth)
        lam = spectrum(est, dt).eig_continuous
        pad = list(lam[:2]) + [complex("nan")] * max(0, 2 - lam.size)
        rows.append({
            "method": label, "iterations": str(int(est.iterations)),
            "converged": "true" if est.converged else "false",
            "eig1_re": _num(pad[0].real), "eig1_im": _num(pad[0].imag),
            "eig2_re": _num(pad[1].real), "eig2_im": _num(pad[1].imag),
            "final_cum_err": _num(rec.final_error),
        })
        trajs[label] = rec.trajectory
    return rows, trajs


def read_external(path) -> List[dict]:
    """Rows of an external results CSV; must have a ``method`` column."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "method" not in reader.fieldnames:
            raise ParseError(f"{path}: external results need a 'method' column", row=1)
        return [{k: (v if v is not None else "") for k, v in row.items()} for row in reader]


def write_comparison(rows: List[dict], path, external: Sequence[dict] = ()) -> Path:
    cols = list(COMPARISON_COLUMNS)
    for row in external:
        for k in row:
            if k not in cols and k is not None:
                cols.append(k)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=cols, restval="", extrasaction="ignore",
                           lineterminator="\n")
        w.writeheader()
        for row in list(rows) + list(external):
            w.writerow(row)
    return path


def write_plot_csv(truth: TimeSeries, trajs: Dict[str, np.ndarray], path) -> Path:
    """Long format: one row per (time, channel) with truth and each method."""
    path = Path(path)
    labels = list(trajs)
    t = truth.times
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "channel", "truth"] + labels)
        for k in range(truth.n_samples):
            for i, ch in enumerate(truth.labels):
                w.writerow([_num(t[k]), ch, _num(truth.states[i, k])]
                           + [_num(trajs[lab][i, k]) for lab in labels])
    return path


def write_timings_csv(timings: Dict[str, float], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method", "seconds"])
        for k, v in timings.items():
            w.writerow([k, f"{v:.6f}"])
    return path


# --------------------------------------------------------------------------- #
# Full pipeline

def run_experiment(spec: ExperimentSpec, out_dir=None) -> RunManifest:
    """Run the whole pipeline and write every artifact under ``out_dir``."""
    out = Path(out_dir if out_dir is not None else spec.out)
    out.mkdir(parents=True, exist_ok=True)
    outputs: List[Path] = []

    p = out / "spec_resolved.txt"
    p.write_text(spec.resolved_text())
    outputs.append(p)

    system = spec.make_system()
    truth = simulate(system, x0=spec.x0, dt=spec.dt, steps=int(spec.steps))
    write_csv(truth, out / "truth.csv")
    outputs.append(out / "truth.csv")
    data = contaminate(truth, spec.plan())
    write_csv(data, out / "data.csv")
    outputs.append(out / "data.csv")
    pair = build_pair(data)

    cfg = spec.huber_config()
    results, timings, estimates = {}, {}, []
    for method in spec.methods:
        est, written, elapsed = fit_and_write(pair, method, cfg, out / method, rank=spec.rank)
        outputs += written
        timings[method] = elapsed
        estimates.append((method, est, pair.dt))
        lam = spectrum(est, pair.dt).eig_continuous
        results[method] = {
            "iterations": int(est.iterations), "converged": bool(est.converged),
            "eigenvalues": [{"re": float(v.real), "im": float(v.imag)} for v in lam]
            if np.all(np.isfinite(lam)) else
            [None if not np.isfinite(v.real) else {"re": float(v.real), "im": float(v.imag)}
             for v in lam],
        }
    rows, trajs = compare_methods(truth, estimates, spec.reconstruct)
    for row in rows:
        results[row["method"]]["final_cum_err"] = float(row["final_cum_err"])
    outputs.append(write_comparison(rows, out / "comparison.csv"))
    outputs.append(write_plot_csv(truth, trajs, out / "plot.csv"))

    manifest = RunManifest(spec.spec_hash(), [], [str(q.relative_to(out)) for q in outputs],
                           results, timings)
    manifest.outputs += ["manifest.json", "timings.json"]
    manifest.write(out)
    return manifest
