"""Linear superiorization over the simultaneous-projection method of Cimmino
for systems of linear inequalities with nonnegativity constraints."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .metrics import Evaluation, evaluate, objective, proximity, proximity_gradient
from .oracle import (
    OracleConvergenceError,
    OracleResult,
    least_squares_proximity_min,
    unclamped_cimmino_limit,
    weighted_squared_distance,
    weighted_squared_distance_gradient,
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
from .projections import (
    CimminoConfig,
    cimmino_step,
    clamp_nonnegative,
    feasibility_operator,
    project_halfspace,
)
from .solver import (
    RunResult,
    SolverConfig,
    SuperiorizationState,
    SweepTrace,
    Termination,
    linsup_sweep,
    next_ell,
    perturb,
    run_baseline,
    run_linsup,
    stopping_check,
)

__all__ = [
    "BACKEND",
    "CimminoConfig",
    "Evaluation",
    "GeneratorSpec",
    "OracleConvergenceError",
    "OracleResult",
    "Problem",
    "ProblemFormatError",
    "RunResult",
    "SolverConfig",
    "SuperiorizationState",
    "SweepTrace",
    "Termination",
    "cimmino_step",
    "clamp_nonnegative",
    "evaluate",
    "feasibility_operator",
    "generate_infeasible",
    "least_squares_proximity_min",
    "linsup_sweep",
    "load_problem",
    "next_ell",
    "objective",
    "pair_certificate",
    "perturb",
    "project_halfspace",
    "proximity",
    "proximity_gradient",
    "run_baseline",
    "run_linsup",
    "save_problem",
    "stopping_check",
    "unclamped_cimmino_limit",
    "weighted_squared_distance",
    "weighted_squared_distance_gradient",
]
