"""Compare the compiled and NumPy projection-statistics kernels.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 100,500,2000]

For each size ``N`` the script times ``qn_raw`` on ``N`` values and
``ps_from_projections`` on an ``N x N`` projection matrix (every point used as
a direction) with both scale estimators, plus a full
:func:`rdmd.projection_statistics` call on ``N`` points in R^4.  It checks
that the backends agree bit for bit and prints the median wall time of each
and the speed-up.
"""
import argparse
import timeit

import numpy as np

from rdmd import robust_stats
from rdmd._backend import available_backends


def _full(kernels, pts, scale):
    saved = robust_stats.kernels
    robust_stats.kernels = kernels
    try:
        return robust_stats.projection_statistics(pts, scale)
    finally:
        robust_stats.kernels = saved


def bench(fn, repeat):
    times = timeit.repeat(fn, number=1, repeat=repeat)
    return float(np.median(times))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="100,500,2000")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the NumPy backend is available")
    rng = np.random.default_rng(args.seed)
    sizes = [int(s) for s in args.sizes.split(",")]

    header = f"{'kernel':<24}{'N':>6}" + "".join(f"{name:>12}" for name in backends) + f"{'speed-up':>10}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        x = rng.standard_normal(n)
        pts = rng.standard_normal((n, 4))
        proj = pts @ (pts - np.median(pts, axis=0)).T
        cases = [
            ("qn_raw", lambda k: k.qn_raw(x)),
            ("ps_from_proj (s2)", lambda k: k.ps_from_projections(proj, True)),
            ("ps_from_proj (s1)", lambda k: k.ps_from_projections(proj, False)),
            ("projection_stats (s2)", lambda k: _full(k, pts, "s2")),
        ]
        for label, call in cases:
            outs = {name: call(k) for name, k in backends.items()}
            ref = outs["python"]
            for name, out in outs.items():
                a = np.asarray(out[0] if isinstance(out, tuple) else out)
                b = np.asarray(ref[0] if isinstance(ref, tuple) else ref)
                if not np.array_equal(a, b):
                    raise SystemExit(f"backend mismatch: {name} vs python on {label}, N={n}")
            times = {name: bench(lambda k=k: call(k), args.repeat) for name, k in backends.items()}
            row = f"{label:<24}{n:>6}" + "".join(f"{times[name] * 1e3:>10.2f}ms" for name in backends)
            if "cython" in times:
                row += f"{times['python'] / times['cython']:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
