"""Superiorized and plain feasibility-seeking drivers.

A sweep of the superiorized solver performs N objective-reduction steps
along ``-c/||c||`` with step sizes ``alpha**ell`` (the exponent ``ell`` is
re-drawn at each sweep start between the sweep counter and its previous
value, then incremented once per inner step), followed by one application
of the feasibility operator (simultaneous sweep + orthant clamp).  The
plain driver applies only the feasibility operator.  Both stop when the
relative change between consecutive outer iterates falls below
``stop_tol`` or when ``max_sweeps`` is reached.

Runs are fully deterministic given the problem and the config: the only
randomness is the exponent redraw, driven by a PCG64 stream seeded with
``SolverConfig.seed``.
"""

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .metrics import objective, proximity
from .problems import Problem
from .projections import CimminoConfig, feasibility_operator


class Termination(enum.Enum):
    CONVERGED = "converged"
    SWEEP_CAP_REACHED = "sweep-cap-reached"


@dataclass
class SolverConfig:
    """Parameters shared by both drivers.

    ``initial_point=None`` means ``init_scale * ones(J)``.  ``alpha``,
    ``n_perturbations`` and ``seed`` only affect the superiorized driver.
    """

    alpha: float = 0.99
    n_perturbations: int = 20
    cimmino: CimminoConfig = field(default_factory=CimminoConfig)
    stop_tol: float = 1e-4
    max_sweeps: int = 50_000
    initial_point: np.ndarray | None = None
    init_scale: float = 10.0
    seed: int = 0

    def validate(self, problem: Problem, require_objective: bool = True) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")
        if self.n_perturbations < 1:
            raise ValueError("n_perturbations must be >= 1")
        if not (self.stop_tol > 0.0):
            raise ValueError("stop_tol must be positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be >= 1")
        if self.initial_point is not None:
            y0 = np.asarray(self.initial_point, dtype=np.float64)
            if y0.shape != (problem.cols,):
                raise ValueError(
                    f"initial point has shape {y0.shape}, expected ({problem.cols},)"
                )
            if not np.all(np.isfinite(y0)):
                raise ValueError("initial point has non-finite values")
        elif not np.isfinite(self.init_scale):
            raise ValueError("init_scale must be finite")
        if require_objective and not np.any(problem.c):
            raise ValueError("objective vector is zero; cannot normalize the direction")
        self.cimmino.resolved_weights(problem.rows)

    def start_point(self, problem: Problem) -> np.ndarray:
        if self.initial_point is not None:
            return np.array(self.initial_point, dtype=np.float64)
        return np.full(problem.cols, float(self.init_scale))


@dataclass
class SuperiorizationState:
    """Mutable progress of the superiorized driver between sweeps.

    ``ell_prev`` is the exponent recorded at the end of the previous sweep
    (0 before the first sweep); ``ell_drawn`` is the value drawn at the
    start of the most recent sweep.  ``rng`` is the live generator for the
    redraws.  ``beta_budget`` accumulates every step size used so far.
    """

    k: int
    ell: int
    ell_prev: int
    y: np.ndarray
    rng: np.random.Generator
    ell_drawn: int = 0
    beta_budget: float = 0.0


@dataclass
class SweepTrace:
    sweep: int
    objective: float
    proximity: float
    rel_change: float
    ell_start: int | None


@dataclass
class RunResult:
    final_point: np.ndarray
    sweeps_run: int
    termination: Termination
    trace: list[SweepTrace]
    beta_budget: float = 0.0


def next_ell(k: int, ell_prev: int, rng: np.random.Generator) -> int:
    """Uniform integer between ``k`` and ``ell_prev``, bounds included."""
    lo, hi = (k, ell_prev) if k <= ell_prev else (ell_prev, k)
    return int(rng.integers(lo, hi, endpoint=True))


def perturb(y: np.ndarray, c: np.ndarray, beta: float) -> np.ndarray:
    """One objective-reduction step: ``y - beta * c / ||c||``.

    Reduces ``<c, .>`` by exactly ``beta * ||c||``.
    """
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise ValueError("cannot perturb along a zero objective vector")
    return y - (beta / norm) * c


def stopping_check(y_curr: np.ndarray, y_prev: np.ndarray, tol: float) -> tuple[bool, float]:
    """Relative-change rule ``||y_curr - y_prev|| / ||y_curr|| <= tol``.

    Falls back to the absolute change when ``||y_curr|| == 0``.  Returns
    (stop?, measured change).
    """
    change = float(np.linalg.norm(y_curr - y_prev))
    denom = float(np.linalg.norm(y_curr))
    rel = change / denom if denom > 0.0 else change
    return rel <= tol, rel


def linsup_sweep(
    state: SuperiorizationState, problem: Problem, cfg: SolverConfig
) -> SuperiorizationState:
    """One outer sweep: redraw the exponent, apply N reduction steps, then
    the feasibility operator."""
    ell = next_ell(state.k, state.ell_prev, state.rng)
    drawn = ell
    z = state.y
    budget = state.beta_budget
    for _ in range(cfg.n_perturbations):
        beta = cfg.alpha**ell
        # alpha in (0,1) and ell >= 0 keep every step size in (0, 1]
        assert 0.0 < beta <= 1.0
        z = perturb(z, problem.c, beta)
        budget += beta
        ell += 1
    y_next = feasibility_operator(z, problem, cfg.cimmino)
    return replace(
        state,
        k=state.k + 1,
        ell=ell,
        ell_prev=ell,
        y=y_next,
        ell_drawn=drawn,
        beta_budget=budget,
    )


def _drive(problem: Problem, cfg: SolverConfig, superiorized: bool) -> RunResult:
    cfg.validate(problem, require_objective=superiorized)
    state = SuperiorizationState(
        k=0,
        ell=0,
        ell_prev=0,
        y=cfg.start_point(problem),
        rng=np.random.Generator(np.random.PCG64(cfg.seed)),
    )
    trace: list[SweepTrace] = []
    termination = Termination.SWEEP_CAP_REACHED
    for _ in range(cfg.max_sweeps):
        y_prev = state.y
        if superiorized:
            state = linsup_sweep(state, problem, cfg)
            ell_start = state.ell_drawn
        else:
            y_next = feasibility_operator(state.y, problem, cfg.cimmino)
            state = replace(state, k=state.k + 1, y=y_next)
            ell_start = None
        stop, rel = stopping_check(state.y, y_prev, cfg.stop_tol)
        trace.append(
            SweepTrace(
                sweep=state.k,
                objective=objective(state.y, problem.c),
                proximity=proximity(state.y, problem),
                rel_change=rel,
                ell_start=ell_start,
            )
        )
        if stop:
            termination = Termination.CONVERGED
            break
    return RunResult(
        final_point=state.y,
        sweeps_run=len(trace),
        termination=termination,
        trace=trace,
        beta_budget=state.beta_budget,
    )


def run_linsup(problem: Problem, cfg: SolverConfig) -> RunResult:
    """Run the superiorized driver from the configured start point."""
    return _drive(problem, cfg, superiorized=True)


def run_baseline(problem: Problem, cfg: SolverConfig) -> RunResult:
    """Run the plain feasibility-seeking driver (no reduction steps)."""
    return _drive(problem, cfg, superiorized=False)
