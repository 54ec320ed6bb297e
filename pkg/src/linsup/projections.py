"""Half-space projection, the simultaneous (Cimmino) sweep, and the orthant clamp.

All operations are pure functions of their inputs.  The sweep reduction
runs in a fixed order inside the selected kernel backend, so results are
bit-deterministic per backend; see ``linsup._kernels`` for the backend
contract.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .problems import Problem


@dataclass
class CimminoConfig:
    """Relaxation parameter and row weights for the simultaneous sweep.

    ``weights=None`` means uniform ``1/I``.  The relaxation parameter must
    satisfy ``eps1 <= lam <= 2 - eps2``.
    """

    lam: float = 1.99
    weights: np.ndarray | None = None
    eps1: float = 1e-6
    eps2: float = 1e-6

    def validate(self) -> None:
        if not (self.eps1 > 0.0 and self.eps2 > 0.0):
            raise ValueError("eps1 and eps2 must be positive")
        if not (self.eps1 <= self.lam <= 2.0 - self.eps2):
            raise ValueError(
                f"relaxation parameter {self.lam} outside [{self.eps1}, {2.0 - self.eps2}]"
            )

    def resolved_weights(self, rows: int) -> np.ndarray:
        """Validate the config and return the concrete weight vector."""
        self.validate()
        if self.weights is None:
            return np.full(rows, 1.0 / rows)
        w = np.ascontiguousarray(self.weights, dtype=np.float64)
        if w.shape != (rows,):
            raise ValueError(f"weights have shape {w.shape}, expected ({rows},)")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
        if abs(float(w.sum()) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {w.sum()!r}, expected 1 within 1e-12")
        return w


def project_halfspace(z: np.ndarray, problem: Problem, i: int) -> np.ndarray:
    """Orthogonal projection of ``z`` onto row ``i``'s half-space (0-based).

    Returns ``z`` itself when it already satisfies the inequality (ties
    included); otherwise the closed-form foot point.
    """
    a_i = problem.a[i]
    excess = float(a_i @ z) - problem.b[i]
    if excess > 0.0:
        return z - (excess / problem.row_norms_sq[i]) * a_i
    return z


def cimmino_step(x: np.ndarray, problem: Problem, cfg: CimminoConfig) -> np.ndarray:
    """One simultaneous sweep: ``x + lam * sum_i w_i (P_i(x) - x)``."""
    w = cfg.resolved_weights(problem.rows)
    x = np.ascontiguousarray(x, dtype=np.float64)
    return _kernels.cimmino_apply(
        problem.a, problem.b, problem.row_norms_sq, w, cfg.lam, x
    )


def clamp_nonnegative(x: np.ndarray) -> np.ndarray:
    """Zero out negative components (projection onto the nonnegative orthant)."""
    return np.maximum(x, 0.0)


def feasibility_operator(x: np.ndarray, problem: Problem, cfg: CimminoConfig) -> np.ndarray:
    """The per-sweep operator: simultaneous sweep followed by the orthant clamp."""
    return clamp_nonnegative(cimmino_step(x, problem, cfg))
