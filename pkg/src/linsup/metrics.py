"""Constraint-violation proximity and the linear objective.

The proximity of a point is

    (1/2I) * sum_i ((<a_i, x> - b_i)_+)^2 / ||a_i||^2
  + (1/2J) * sum_j ((-x_j)_+)^2

which is zero exactly on the feasible set ``Ax <= b, x >= 0``.  It is
diagnostic only: the solvers never consume it, it is recorded once per
sweep for tracing.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .problems import Problem


@dataclass(frozen=True)
class Evaluation:
    proximity: float
    objective: float


def proximity(x: np.ndarray, problem: Problem) -> float:
    x = np.ascontiguousarray(x, dtype=np.float64)
    inequality, orthant = _kernels.proximity_parts(
        problem.a, problem.b, problem.row_norms_sq, x
    )
    return inequality / (2.0 * problem.rows) + orthant / (2.0 * problem.cols)


def objective(x: np.ndarray, c: np.ndarray) -> float:
    x = np.asarray(x, dtype=np.float64)
    c = np.asarray(c, dtype=np.float64)
    if x.shape != c.shape:
        raise ValueError(f"length mismatch: x has shape {x.shape}, c has shape {c.shape}")
    return float(c @ x)


def evaluate(x: np.ndarray, problem: Problem) -> Evaluation:
    return Evaluation(proximity=proximity(x, problem), objective=objective(x, problem.c))


def proximity_gradient(x: np.ndarray, problem: Problem) -> np.ndarray:
    """Analytic gradient of :func:`proximity` (defined everywhere; the
    positive-part terms are differentiable with one-sided kinks at activity
    boundaries, where this returns the right-continuous branch)."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    residual = problem.a @ x - problem.b
    np.maximum(residual, 0.0, out=residual)
    grad = (residual / problem.row_norms_sq) @ problem.a / problem.rows
    grad += np.minimum(x, 0.0) / problem.cols
    return grad
