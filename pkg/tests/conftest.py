import numpy as np
import pytest

from linsup import _kernels
from linsup.problems import Problem


def make_feasible(rng, rows=6, cols=4, slack=(0.5, 3.0)):
    """Random instance together with a strictly positive interior point."""
    a = rng.normal(size=(rows, cols))
    m = np.abs(rng.normal(size=cols)) + 0.1
    b = a @ m + rng.uniform(*slack, size=rows)
    c = rng.normal(size=cols)
    return Problem(a, b, c), m


def make_vacuous(cols=3, c=None):
    """Instance whose constraints can never bind near the origin."""
    a = np.eye(max(2, cols))[:2, :cols]
    if not a[1].any():
        a[1, -1] = 1.0
    b = np.full(2, 1e9)
    if c is None:
        c = np.ones(cols)
    return Problem(a, b, c)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jitted kernels once so timed tests measure compute only
    a = np.array([[1.0, 0.0], [0.0, 1.0]])
    b = np.zeros(2)
    rnsq = np.ones(2)
    w = np.full(2, 0.5)
    x = np.array([1.0, -1.0])
    _kernels.cimmino_apply(a, b, rnsq, w, 1.0, x)
    _kernels.proximity_parts(a, b, rnsq, x)
