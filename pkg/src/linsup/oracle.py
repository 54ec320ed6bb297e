"""Independent check of the inconsistent-case limit.

On an infeasible system the simultaneous-projection iteration converges to
a minimizer of the weighted least-squares infeasibility functional

    f(x) = sum_i w_i * ((<a_i, x> - b_i)_+)^2 / ||a_i||^2

(the squared distance to half-space i is ``((<a_i,x>-b_i)_+)^2/||a_i||^2``).
This module minimizes f by Nesterov-accelerated gradient descent with a
backtracking line search and gradient-based restarts -- a route unrelated
to the projection iteration -- so agreement between the two is a real
cross-check.  The nonnegativity clamp is deliberately excluded; append
rows ``-x_j <= 0`` explicitly when a clamp-inclusive comparison is wanted.
"""

import math
from dataclasses import dataclass

import numpy as np

from .problems import Problem
from .projections import CimminoConfig, cimmino_step
from .solver import stopping_check

MAX_ORACLE_CELLS = 10_000


class OracleConvergenceError(RuntimeError):
    """Raised when the gradient-descent iteration cap is exhausted."""


@dataclass
class OracleResult:
    minimizer: np.ndarray
    objective_value: float
    gradient_norm: float


def weighted_squared_distance(x: np.ndarray, problem: Problem, weights: np.ndarray) -> float:
    """Value of f at ``x``."""
    residual = problem.a @ x - problem.b
    np.maximum(residual, 0.0, out=residual)
    return float(weights @ (residual * residual / problem.row_norms_sq))


def weighted_squared_distance_gradient(
    x: np.ndarray, problem: Problem, weights: np.ndarray
) -> np.ndarray:
    """Gradient of f at ``x`` (f is convex with 2-Lipschitz gradient when
    the weights sum to 1)."""
    residual = problem.a @ x - problem.b
    np.maximum(residual, 0.0, out=residual)
    return 2.0 * ((weights * residual / problem.row_norms_sq) @ problem.a)


def least_squares_proximity_min(
    problem: Problem,
    weights: np.ndarray,
    x0: np.ndarray,
    tol: float = 1e-8,
    max_steps: int = 1_000_000,
) -> OracleResult:
    """Minimize f from ``x0`` until ``||grad f|| <= tol * (1 + ||x||)``.

    Restricted to small instances (``I * J <= 10_000``); raises
    :class:`OracleConvergenceError` if the step cap is exhausted.
    """
    if problem.rows * problem.cols > MAX_ORACLE_CELLS:
        raise ValueError(
            f"instance too large for the oracle: I*J = {problem.rows * problem.cols} "
            f"> {MAX_ORACLE_CELLS}"
        )
    w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.shape != (problem.rows,):
        raise ValueError(f"weights have shape {w.shape}, expected ({problem.rows},)")
    if np.any(w < 0.0):
        raise ValueError("weights must be nonnegative")

    x = np.array(x0, dtype=np.float64)
    if x.shape != (problem.cols,):
        raise ValueError(f"x0 has shape {x.shape}, expected ({problem.cols},)")

    grad_x = weighted_squared_distance_gradient(x, problem, w)
    gnorm = float(np.linalg.norm(grad_x))
    if gnorm <= tol * (1.0 + float(np.linalg.norm(x))):
        return OracleResult(x, weighted_squared_distance(x, problem, w), gnorm)

    v = x.copy()
    t = 1.0
    lipschitz = 1.0  # grown by backtracking; the true constant is at most 2*sum(w)
    for _ in range(max_steps):
        g = weighted_squared_distance_gradient(v, problem, w)
        f_v = weighted_squared_distance(v, problem, w)
        gg = float(g @ g)
        while True:
            cand = v - g / lipschitz
            f_cand = weighted_squared_distance(cand, problem, w)
            if f_cand <= f_v - 0.5 * gg / lipschitz + 1e-18 * (1.0 + abs(f_v)):
                break
            lipschitz *= 2.0
        t_next = 0.5 * (1.0 + math.sqrt(1.0 + 4.0 * t * t))
        v = cand + ((t - 1.0) / t_next) * (cand - x)
        # restart the momentum when it opposes the descent direction
        if float(g @ (cand - x)) > 0.0:
            t_next = 1.0
            v = cand.copy()
        x = cand
        t = t_next
        grad_x = weighted_squared_distance_gradient(x, problem, w)
        gnorm = float(np.linalg.norm(grad_x))
        if gnorm <= tol * (1.0 + float(np.linalg.norm(x))):
            return OracleResult(x, weighted_squared_distance(x, problem, w), gnorm)
    raise OracleConvergenceError(
        f"gradient norm {gnorm:.3e} still above tolerance after {max_steps} steps"
    )


def unclamped_cimmino_limit(
    problem: Problem,
    x0: np.ndarray,
    cfg: CimminoConfig | None = None,
    tol: float = 1e-12,
    max_sweeps: int = 1_000_000,
) -> np.ndarray:
    """Iterate the bare simultaneous sweep (no orthant clamp) to its limit.

    Stops when the relative change drops below ``tol``; raises
    :class:`OracleConvergenceError` at the sweep cap.
    """
    if cfg is None:
        cfg = CimminoConfig()
    x = np.array(x0, dtype=np.float64)
    for _ in range(max_sweeps):
        x_next = cimmino_step(x, problem, cfg)
        stop, _ = stopping_check(x_next, x, tol)
        x = x_next
        if stop:
            return x
    raise OracleConvergenceError(f"no convergence within {max_sweeps} sweeps at tol={tol}")
