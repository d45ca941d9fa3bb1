"""Command-line front end.

Subcommands::

    rdmd simulate     integrate a benchmark system to a snapshot CSV
    rdmd inject       add outliers / noise / spikes to a snapshot CSV
    rdmd fit          estimate an operator and write JSON results
    rdmd reconstruct  propagate a fitted operator, optionally against truth
    rdmd compare      tabulate several fits against a truth CSV
    rdmd run          full pipeline from a key = value spec file

Exit codes: 0 success, 1 runtime or numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DomainError, RDMDError
from .estimators import METHODS, HuberConfig
from .experiment import (ExperimentSpec, compare_methods, derive_seed, dump_json, fit_and_write,
                         load_estimate, load_json, read_external, run_experiment, seed_from_env,
                         write_comparison, write_plot_csv, write_timings_csv)
from .modal import reconstruct
from .snapshots import TimeSeries, build_pair, read_csv, read_paired_csv, write_csv
from .systems import (NOISE_KINDS, SYSTEMS, ContaminationPlan, OutlierWindow, SpikeModel,
                      contaminate, make_system, simulate)


class UsageError(Exception):
    """Bad arguments detected after parsing; maps to exit code 2."""


def _floats(text, what, n=None):
    try:
        vals = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"{what}: expected {n} numbers, got {len(vals)}")
    return vals


def _param(text):
    if "=" not in text:
        raise UsageError(f"--param expects key=value, got {text!r}")
    k, v = text.split("=", 1)
    v = v.strip()
    for conv in (int, float):
        try:
            return k.strip(), conv(v)
        except ValueError:
            pass
    if v.lower() in ("true", "false"):
        return k.strip(), v.lower() == "true"
    return k.strip(), v


# --------------------------------------------------------------------------- #
# Subcommands

def cmd_simulate(args) -> int:
    params = dict(_param(p) for p in args.param)
    for name in ("s", "m", "mu", "d"):
        v = getattr(args, name)
        if v is not None:
            params[name] = v
    if args.seed is not None:
        params["seed"] = seed_from_env(args.seed)
    try:
        system = make_system(args.system, **params)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    x0 = None if args.x0 is None else _floats(args.x0, "--x0")
    series = simulate(system, x0=x0, dt=args.dt, steps=args.steps)
    write_csv(series, args.out)
    resolved = {"system": args.system, "params": system.params(), "dt": args.dt,
                "steps": args.steps,
                "x0": [float(v) for v in series.states[:, 0]], "out": str(args.out)}
    for k, v in resolved.items():
        print(f"{k} = {v}")
    return 0


def cmd_inject(args) -> int:
    series = read_csv(args.input)
    seed = seed_from_env(args.seed)
    windows = [OutlierWindow(*_floats(w, "--window", 3)) for w in args.window]
    spike = None if args.spike is None else SpikeModel(*_floats(args.spike, "--spike", 3))
    try:
        plan = ContaminationPlan(gaussian_sigma=args.sigma, noise_kind=args.noise,
                                 noise_param=args.noise_param, windows=windows, spike=spike,
                                 seed=derive_seed(seed, "contaminate"))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    write_csv(contaminate(series, plan), args.out)
    print(f"seed = {seed}")
    for k, v in plan.to_dict().items():
        print(f"{k} = {v}")
    return 0


def _config(args) -> HuberConfig:
    try:
        return HuberConfig(delta=args.delta, b=args.b, irls_tol=args.tol, max_iter=args.max_iter,
                           bm=args.bm, gamma=args.gamma, scale_estimator=args.scale, dof=args.dof)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def cmd_fit(args) -> int:
    cfg = _config(args)
    if args.paired:
        pair = read_paired_csv(*args.paired)
        inputs = [str(p) for p in args.paired]
    elif args.input:
        pair = build_pair(read_csv(args.input))
        inputs = [str(args.input)]
    else:
        raise UsageError("fit needs --in FILE or --paired Y.csv YP.csv")
    out = Path(args.out_dir)
    est, written, elapsed = fit_and_write(pair, args.method, cfg, out, rank=args.rank)
    dump_json({"method": args.method, "inputs": inputs,
               "outputs": [p.name for p in written], "tool_version": __version__,
               "iterations": est.iterations, "converged": est.converged,
               "timings_file": "timings.json"}, out / "manifest.json")
    dump_json({"unit": "s", "wall_clock": {args.method: elapsed}}, out / "timings.json")
    print(f"{args.method}: {est.iterations} iterations, converged={est.converged}, "
          f"{elapsed:.3f} s -> {out}")
    return 0


def cmd_reconstruct(args) -> int:
    est, dt = load_estimate(args.estimate)
    truth = read_csv(args.truth) if args.truth else None
    if args.x0 is not None:
        x0 = np.asarray(_floats(args.x0, "--x0"))
    elif truth is not None:
        x0 = truth.states[:, 0]
    else:
        raise UsageError("reconstruct needs --x0 or --truth")
    steps = args.steps
    if steps is None:
        if truth is None:
            raise UsageError("reconstruct needs --steps when no --truth is given")
        steps = truth.n_samples - 1
    if truth is not None and not np.isclose(truth.dt, dt, rtol=1e-9, atol=0.0):
        raise DomainError(f"estimate dt {dt} does not match truth dt {truth.dt}")
    rec = reconstruct(est, x0, steps, mode=args.mode, truth=truth)
    labels = truth.labels if truth is not None else None
    t0 = truth.t0 if truth is not None else 0.0
    extra = None if rec.cumulative_error is None else {"cum_err": rec.cumulative_error}
    write_csv(TimeSeries(rec.trajectory, dt, t0, labels), args.out, extra_columns=extra)
    if rec.cumulative_error is not None:
        print(f"final cumulative error = {rec.final_error:.6g}")
    return 0


def cmd_compare(args) -> int:
    truth = read_csv(args.truth)
    estimates, timings = [], {}
    for item in args.fit:
        label, _, path = item.rpartition("=")
        est, dt = load_estimate(path)
        label = label or est.method
        estimates.append((label, est, dt))
        base = Path(path) if Path(path).is_dir() else Path(path).parent
        tfile = base / "timings.json"
        if tfile.exists():
            wall = load_json(tfile).get("wall_clock", {})
            if est.method in wall:
                timings[label] = float(wall[est.method])
    labels = [e[0] for e in estimates]
    if len(set(labels)) != len(labels):
        raise UsageError(f"duplicate method labels {labels}; use LABEL=PATH")
    rows, trajs = compare_methods(truth, estimates, args.mode)
    external = []
    for path in args.external:
        external += read_external(path)
    out = Path(args.out)
    write_comparison(rows, out, external)
    plot = Path(args.plot) if args.plot else out.with_name(out.stem + "_plot.csv")
    write_plot_csv(truth, trajs, plot)
    if timings:
        write_timings_csv(timings, out.with_name(out.stem + "_timings.csv"))
    for r in rows:
        print(f"{r['method']}: eig1 = {float(r['eig1_re']):.4f}{float(r['eig1_im']):+.4f}j, "
              f"final cumulative error = {float(r['final_cum_err']):.6g}")
    return 0


def cmd_run(args) -> int:
    try:
        spec = ExperimentSpec.from_file(args.spec)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    spec.seed = seed_from_env(spec.seed)
    out = Path(args.out_dir) if args.out_dir else Path(spec.out)
    manifest = run_experiment(spec, out)
    for method, res in manifest.results.items():
        print(f"{method}: final cumulative error = {res['final_cum_err']:.6g}, "
              f"{manifest.timings[method]:.3f} s")
    print(f"spec hash {manifest.spec_hash[:12]}, outputs in {out}")
    return 0


# --------------------------------------------------------------------------- #
# Parser

def _add_huber(p):
    g = p.add_argument_group("robust estimator options")
    g.add_argument("--delta", type=float, default=1.5, help="Huber corner (default 1.5)")
    g.add_argument("--b", type=float, default=1.5, help="weight cutoff (default 1.5)")
    g.add_argument("--tol", type=float, default=0.01, help="IRLS tolerance (default 0.01)")
    g.add_argument("--max-iter", type=int, default=50)
    g.add_argument("--bm", type=float, default=1.0, help="scale correction factor")
    g.add_argument("--scale", choices=("s1", "s2"), default="s2")
    g.add_argument("--dof", type=int, default=None, help="chi-square dof (default 2m)")
    g.add_argument("--rank", type=int, default=None, help="truncation rank (reduced methods)")
    g.add_argument("--gamma", type=float, default=None,
                   help="Tikhonov constant (default: relative 1e-6 of the mean Gram diagonal)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rdmd", description="Robust dynamic mode decomposition")
    parser.add_argument("--version", action="version", version=f"rdmd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate a benchmark system")
    p.add_argument("--system", required=True, choices=sorted(SYSTEMS))
    p.add_argument("--dt", type=float, default=0.01)
    p.add_argument("--steps", type=int, default=500)
    p.add_argument("--x0", default=None, help="comma-separated initial state")
    p.add_argument("--s", type=int, default=None, help="ring size")
    p.add_argument("--m", type=int, default=None, help="state dimension")
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--d", type=float, default=None, help="ring damping")
    p.add_argument("--seed", type=int, default=None, help="seed for random systems")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--out", default="run.csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("inject", help="contaminate a snapshot CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", action="append", default=[], metavar="T0,T1,MAG")
    p.add_argument("--noise", choices=NOISE_KINDS, default="none")
    p.add_argument("--noise-param", type=float, default=None,
                   help="variance (gaussian, laplace), dof (student_t) or gamma (cauchy)")
    p.add_argument("--sigma", type=float, default=0.0, help="extra Gaussian floor")
    p.add_argument("--spike", default=None, metavar="MU,P,ETA")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_inject)

    p = sub.add_parser("fit", help="estimate an operator")
    p.add_argument("--in", dest="input", default=None)
    p.add_argument("--paired", nargs=2, default=None, metavar=("Y_CSV", "YP_CSV"))
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("--out-dir", default="fit")
    _add_huber(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("reconstruct", help="propagate a fitted operator")
    p.add_argument("--estimate", required=True, help="estimate.json or its directory")
    p.add_argument("--truth", default=None)
    p.add_argument("--x0", default=None)
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--mode", choices=("free_run", "one_step"), default="free_run")
    p.add_argument("--out", default="reconstruction.csv")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("compare", help="compare fits against truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--fit", action="append", required=True, metavar="[LABEL=]PATH")
    p.add_argument("--external", action="append", default=[], metavar="CSV")
    p.add_argument("--mode", choices=("free_run", "one_step"), default="free_run")
    p.add_argument("--out", default="comparison.csv")
    p.add_argument("--plot", default=None, help="long-format CSV (default <out>_plot.csv)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("run", help="run a spec file end to end")
    p.add_argument("spec")
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=cmd_run)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    saved = warnings.showwarning
    warnings.showwarning = _show_warning
    try:
        return _main(argv)
    finally:
        warnings.showwarning = saved


def _main(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"rdmd: error: {exc}", file=sys.stderr)
        return 2
    except (RDMDError, OSError, ValueError, ArithmeticError) as exc:
        print(f"rdmd: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
