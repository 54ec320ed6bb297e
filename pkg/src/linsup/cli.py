"""Command-line front end: generate instances, run solvers, plot traces, verify limits.

Exit codes: 0 success, 2 validation error, 3 sweep cap reached, 4 I/O error.
"""

import argparse
import datetime
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__, _kernels
from .oracle import (
    MAX_ORACLE_CELLS,
    least_squares_proximity_min,
    unclamped_cimmino_limit,
    weighted_squared_distance,
)
from .problems import (
    GeneratorSpec,
    Problem,
    ProblemFormatError,
    generate_infeasible,
    load_problem,
    pair_certificate,
    save_problem,
)
from .projections import CimminoConfig
from .solver import RunResult, SolverConfig, Termination, run_baseline, run_linsup
from .svgplot import line_chart
from .traces import TraceSchemaError, read_trace_csv, write_trace_csv

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_SWEEP_CAP = 3
EXIT_IO = 4


@dataclass
class ExperimentSpec:
    """Everything one run depends on, echoed into trace provenance."""

    solver: SolverConfig
    output_dir: Path
    generator: GeneratorSpec | None = None
    run_baseline: bool = True
    record_negated_objective: bool = True

    def provenance(self, command: str, extra: list[str]) -> list[str]:
        lines = [f"linsup {__version__}", f"backend: {_kernels.BACKEND}", f"command: {command}"]
        if self.generator is not None:
            g = self.generator
            lines.append(
                f"generator: pair_count={g.pair_count} cols={g.cols} seed={g.seed} "
                f"a_range={g.a_range} b_range={g.b_range} gap_range={g.gap_range} "
                f"c_range={g.c_range}"
            )
        s = self.solver
        weights = "uniform" if s.cimmino.weights is None else "custom"
        lines.append(
            f"solver: alpha={s.alpha} n_perturbations={s.n_perturbations} "
            f"lambda={s.cimmino.lam} weights={weights} stop_tol={s.stop_tol} "
            f"max_sweeps={s.max_sweeps} init_scale={s.init_scale} seed={s.seed}"
        )
        lines.append(
            "neg_objective: " + ("recorded" if self.record_negated_objective else "omitted")
        )
        lines.extend(extra)
        return lines


def _worker_cap(default: int) -> int:
    raw = os.environ.get("LINSUP_THREADS")
    if raw is None:
        return default
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"LINSUP_THREADS must be >= 1, got {raw!r}")
    return min(default, cap)


def _add_solver_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="seed for the exponent redraws")
    parser.add_argument("--tol", type=float, default=1e-4, help="relative-change stopping tolerance")
    parser.add_argument("--alpha", type=float, default=0.99, help="step-size kernel in (0,1)")
    parser.add_argument("--n-perturb", type=int, default=20, help="reduction steps per sweep")
    parser.add_argument("--lambda", dest="lam", type=float, default=1.99, help="relaxation parameter")
    parser.add_argument("--max-sweeps", type=int, default=50_000, help="sweep cap")
    parser.add_argument(
        "--init-scale", type=float, default=10.0, help="start point is this value times the ones vector"
    )


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        alpha=args.alpha,
        n_perturbations=args.n_perturb,
        cimmino=CimminoConfig(lam=args.lam),
        stop_tol=args.tol,
        max_sweeps=args.max_sweeps,
        init_scale=args.init_scale,
        seed=args.seed,
    )


def cmd_generate(args) -> int:
    spec = GeneratorSpec(
        pair_count=args.pairs,
        cols=args.cols,
        seed=args.seed,
        a_range=tuple(args.a_range),
        b_range=tuple(args.b_range),
        gap_range=tuple(args.gap_range),
        c_range=tuple(args.c_range),
    )
    problem = generate_infeasible(spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_problem(problem, out)
    cert = pair_certificate(problem, spec.pair_count)
    print(f"wrote {out}: I={problem.rows} ({spec.pair_count} opposing pairs), J={problem.cols}")
    print(
        f"infeasibility certificate: all {spec.pair_count} pair sums negative "
        f"(max = {cert.max():.6g})"
    )
    return EXIT_OK


def _run_one(mode: str, problem: Problem, cfg: SolverConfig) -> RunResult:
    return run_linsup(problem, cfg) if mode == "linsup" else run_baseline(problem, cfg)


def cmd_run(args) -> int:
    problem = load_problem(args.problem)
    cfg = _solver_config(args)
    modes = ["linsup", "baseline"] if args.mode == "both" else [args.mode]
    # fail on bad parameters before any compute
    cfg.validate(problem, require_objective="linsup" in modes)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    spec = ExperimentSpec(
        solver=cfg,
        output_dir=out_dir,
        run_baseline="baseline" in modes,
        record_negated_objective=not args.no_neg_objective,
    )

    workers = _worker_cap(len(modes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {mode: pool.submit(_run_one, mode, problem, cfg) for mode in modes}
            results = {mode: fut.result() for mode, fut in futures.items()}
    else:
        results = {mode: _run_one(mode, problem, cfg) for mode in modes}

    code = EXIT_OK
    for mode in modes:
        result = results[mode]
        extra = [f"problem: {args.problem} (I={problem.rows}, J={problem.cols})", f"mode: {mode}"]
        if args.timestamp:
            extra.append(f"written: {datetime.datetime.now().isoformat()}")
        path = out_dir / f"{mode}.csv"
        write_trace_csv(
            path,
            result,
            spec.provenance("run", extra),
            record_neg_objective=spec.record_negated_objective,
        )
        last = result.trace[-1]
        status = (
            "converged"
            if result.termination is Termination.CONVERGED
            else "sweep cap reached"
        )
        print(
            f"{mode}: {status} after {result.sweeps_run} sweeps; "
            f"objective={last.objective:.6g} proximity={last.proximity:.6g} -> {path}"
        )
        if result.termination is Termination.SWEEP_CAP_REACHED:
            code = EXIT_SWEEP_CAP
    return code


def cmd_plot(args) -> int:
    if args.linsup is None and args.baseline is None:
        raise ValueError("need at least one of --linsup / --baseline")
    traces = {}
    if args.linsup is not None:
        traces["linsup"] = read_trace_csv(args.linsup)
    if args.baseline is not None:
        traces["baseline"] = read_trace_csv(args.baseline)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    if "linsup" in traces and "baseline" in traces:
        path = out_dir / "objective.svg"
        line_chart(
            path,
            [
                ("superiorized", traces["linsup"]["sweep"], traces["linsup"]["objective"]),
                ("feasibility only", traces["baseline"]["sweep"], traces["baseline"]["objective"]),
            ],
            title="Objective value per sweep",
            x_label="sweep",
            y_label="objective",
        )
        print(f"wrote {path}")
        path = out_dir / "proximity.svg"
        line_chart(
            path,
            [
                ("superiorized", traces["linsup"]["sweep"], traces["linsup"]["proximity"]),
                ("feasibility only", traces["baseline"]["sweep"], traces["baseline"]["proximity"]),
            ],
            title="Proximity (constraint violation) per sweep",
            x_label="sweep",
            y_label="proximity",
        )
        print(f"wrote {path}")
    else:
        print("skipping objective.svg and proximity.svg: need both --linsup and --baseline")

    if "baseline" in traces:
        base = traces["baseline"]
        if any(v is None for v in base["neg_objective"]):
            print("skipping objective_signs.svg: baseline trace has no negated objective values")
        else:
            path = out_dir / "objective_signs.svg"
            line_chart(
                path,
                [
                    ("objective", base["sweep"], base["objective"]),
                    ("negated objective", base["sweep"], base["neg_objective"]),
                ],
                title="Objective and its negation along the feasibility-only run",
                x_label="sweep",
                y_label="value",
            )
            print(f"wrote {path}")
    else:
        print("skipping objective_signs.svg: needs --baseline")
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = load_problem(args.problem)
    cells = problem.rows * problem.cols
    if cells > MAX_ORACLE_CELLS:
        print(
            f"instance too large to verify: I*J = {cells} > {MAX_ORACLE_CELLS}; "
            "regenerate a smaller instance (e.g. --pairs 10 --cols 10)",
            file=sys.stderr,
        )
        return EXIT_VALIDATION
    cfg = CimminoConfig(lam=args.lam)
    weights = cfg.resolved_weights(problem.rows)
    x0 = np.full(problem.cols, args.init_scale)
    x_limit = unclamped_cimmino_limit(problem, x0, cfg, tol=args.limit_tol)
    oracle = least_squares_proximity_min(problem, weights, x0, tol=args.oracle_tol)
    f_limit = weighted_squared_distance(x_limit, problem, weights)
    gap = f_limit - oracle.objective_value
    bound = args.gap_tol * (1.0 + oracle.objective_value)
    print(f"weighted least-squares value at projection limit: {f_limit:.12g}")
    print(f"weighted least-squares value at oracle minimizer: {oracle.objective_value:.12g}")
    print(f"gap: {gap:.6g} (allowed: {bound:.6g})")
    if gap <= bound:
        print("limit matches the weighted least-squares solution")
        return EXIT_OK
    print("limit does NOT match the weighted least-squares solution", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linsup",
        description=(
            "Superiorized and plain simultaneous-projection solvers for systems "
            "of linear inequalities with nonnegativity constraints"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a structurally infeasible instance file")
    gen.add_argument("--pairs", type=int, required=True, help="number of opposing row pairs")
    gen.add_argument("--cols", type=int, required=True, help="number of variables")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output problem file")
    gen.add_argument("--a-range", type=float, nargs=2, default=(-1.0, 1.0), metavar=("LO", "HI"))
    gen.add_argument("--b-range", type=float, nargs=2, default=(0.0, 100.0), metavar=("LO", "HI"))
    gen.add_argument("--gap-range", type=float, nargs=2, default=(100.0, 200.0), metavar=("LO", "HI"))
    gen.add_argument("--c-range", type=float, nargs=2, default=(-2.0, 1.0), metavar=("LO", "HI"))
    gen.set_defaults(handler=cmd_generate)

    run = sub.add_parser("run", help="solve an instance and write trace CSVs")
    run.add_argument("problem", help="instance file")
    run.add_argument("--mode", choices=["linsup", "baseline", "both"], default="both")
    run.add_argument("--out", required=True, help="output directory for trace CSVs")
    _add_solver_flags(run)
    run.add_argument(
        "--timestamp", action="store_true", help="embed a timestamp comment (breaks byte reproducibility)"
    )
    run.add_argument(
        "--no-neg-objective", action="store_true", help="leave the neg_objective column empty"
    )
    run.set_defaults(handler=cmd_run)

    plot = sub.add_parser("plot", help="render trace CSVs to SVG charts")
    plot.add_argument("--linsup", help="superiorized trace CSV")
    plot.add_argument("--baseline", help="feasibility-only trace CSV")
    plot.add_argument("--out", required=True, help="output directory for SVG files")
    plot.set_defaults(handler=cmd_plot)

    verify = sub.add_parser(
        "verify", help="check the projection limit against the least-squares oracle"
    )
    verify.add_argument("problem", help="instance file (small: I*J <= 10000)")
    verify.add_argument("--lambda", dest="lam", type=float, default=1.99)
    verify.add_argument("--init-scale", type=float, default=10.0)
    verify.add_argument("--gap-tol", type=float, default=1e-3, help="allowed relative value gap")
    verify.add_argument("--limit-tol", type=float, default=1e-12, help="projection-limit stop tolerance")
    verify.add_argument("--oracle-tol", type=float, default=1e-8, help="oracle gradient tolerance")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ProblemFormatError, TraceSchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
