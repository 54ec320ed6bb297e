#!/usr/bin/env python3
"""Benchmark the sweep kernels: numba backend vs pure-numpy fallback.

Times a full feasibility sweep (simultaneous projection + proximity
evaluation) on generated instances and reports per-sweep medians plus the
speedup.  Cross-checks that both backends agree to 1e-12 relative before
timing.

Usage:
    python3 benchmarks/bench_backends.py [--pairs 125 625] [--cols 200 1000]
                                         [--sweeps 200] [--repeats 5]
"""

import argparse
import time

import numpy as np

from linsup._kernels import IMPLEMENTATIONS
from linsup.problems import GeneratorSpec, generate_infeasible


def bench_one(fn_step, fn_prox, problem, weights, lam, x0, sweeps, repeats):
    times = []
    for _ in range(repeats):
        x = x0.copy()
        t0 = time.perf_counter()
        for _ in range(sweeps):
            x = fn_step(problem.a, problem.b, problem.row_norms_sq, weights, lam, x)
            np.maximum(x, 0.0, out=x)
            fn_prox(problem.a, problem.b, problem.row_norms_sq, x)
        times.append(time.perf_counter() - t0)
    return float(np.median(times)) / sweeps


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, nargs="+", default=[125, 625])
    parser.add_argument("--cols", type=int, nargs="+", default=[200, 1000])
    parser.add_argument("--sweeps", type=int, default=200)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    if len(args.pairs) != len(args.cols):
        parser.error("--pairs and --cols need the same number of values")

    backends = list(IMPLEMENTATIONS)
    print(f"backends available: {', '.join(backends)}")
    if "numba" not in backends:
        print("numba not importable; timing the numpy fallback only")

    lam = 1.99
    for pairs, cols in zip(args.pairs, args.cols):
        problem = generate_infeasible(GeneratorSpec(pair_count=pairs, cols=cols, seed=1))
        weights = np.full(problem.rows, 1.0 / problem.rows)
        x0 = np.full(problem.cols, 10.0)

        # agreement check (and numba warm-up/compile) before any timing
        refs = {}
        for name in backends:
            impl = IMPLEMENTATIONS[name]
            step = impl["cimmino_apply"](problem.a, problem.b, problem.row_norms_sq, weights, lam, x0)
            prox = impl["proximity_parts"](problem.a, problem.b, problem.row_norms_sq, x0)
            refs[name] = (step, prox)
        if len(backends) == 2:
            s_np, p_np = refs["numpy"]
            s_nb, p_nb = refs["numba"]
            assert np.allclose(s_np, s_nb, rtol=1e-12, atol=1e-12), "backend mismatch: sweep"
            assert np.allclose(p_np, p_nb, rtol=1e-12, atol=1e-12), "backend mismatch: proximity"

        print(f"\ninstance I={problem.rows} J={problem.cols} "
              f"({args.sweeps} sweeps x {args.repeats} repeats)")
        per_sweep = {}
        for name in backends:
            impl = IMPLEMENTATIONS[name]
            per_sweep[name] = bench_one(
                impl["cimmino_apply"], impl["proximity_parts"],
                problem, weights, lam, x0, args.sweeps, args.repeats,
            )
            print(f"  {name:6s}: {per_sweep[name] * 1e6:10.1f} us/sweep")
        if len(per_sweep) == 2:
            print(f"  numba speedup over numpy: {per_sweep['numpy'] / per_sweep['numba']:.2f}x")


if __name__ == "__main__":
    main()
