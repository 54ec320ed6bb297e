"""Hot numeric kernels: numba-compiled fast path with a pure-numpy fallback.

The backend is fixed at import time from the environment variable
``LINSUP_BACKEND``:

* ``auto`` (default) -- use numba when it is importable, numpy otherwise.
* ``numba``          -- require numba; raise if it is missing.
* ``numpy``          -- force the pure-numpy path even when numba exists.

Both backends compute the same quantities but accumulate in different
orders (BLAS pairwise summation vs. SIMD-reassociated loops under
``fastmath``), so their outputs may differ at the 1e-12 relative level.
Each compiled backend on its own is bit-deterministic from run to run.

All kernels expect C-contiguous float64 arrays.
"""

import os

import numpy as np

_CHOICE = os.environ.get("LINSUP_BACKEND", "auto").strip().lower()
if _CHOICE not in ("auto", "numba", "numpy"):
    raise ValueError(
        f"LINSUP_BACKEND={_CHOICE!r} not understood; use 'auto', 'numba' or 'numpy'"
    )


def _cimmino_apply_numpy(a, b, row_norms_sq, weights, lam, x):
    residual = a @ x - b
    np.maximum(residual, 0.0, out=residual)
    coef = (lam * weights / row_norms_sq) * residual
    return x - coef @ a


def _proximity_parts_numpy(a, b, row_norms_sq, x):
    residual = a @ x - b
    np.maximum(residual, 0.0, out=residual)
    inequality = float((residual * residual / row_norms_sq).sum())
    negative = np.minimum(x, 0.0)
    orthant = float(negative @ negative)
    return inequality, orthant


_HAVE_NUMBA = False
if _CHOICE in ("auto", "numba"):
    try:
        from numba import njit
    except ImportError:
        if _CHOICE == "numba":
            raise ImportError(
                "LINSUP_BACKEND=numba but numba is not installed"
            ) from None
    else:
        _HAVE_NUMBA = True

if _HAVE_NUMBA:

    @njit(cache=True, fastmath=True)
    def _cimmino_apply_numba(a, b, row_norms_sq, weights, lam, x):
        rows, cols = a.shape
        out = x.copy()
        for i in range(rows):
            r = -b[i]
            for j in range(cols):
                r += a[i, j] * x[j]
            if r > 0.0:
                s = lam * weights[i] * r / row_norms_sq[i]
                for j in range(cols):
                    out[j] -= s * a[i, j]
        return out

    @njit(cache=True, fastmath=True)
    def _proximity_parts_numba(a, b, row_norms_sq, x):
        rows, cols = a.shape
        inequality = 0.0
        for i in range(rows):
            r = -b[i]
            for j in range(cols):
                r += a[i, j] * x[j]
            if r > 0.0:
                inequality += r * r / row_norms_sq[i]
        orthant = 0.0
        for j in range(cols):
            if x[j] < 0.0:
                orthant += x[j] * x[j]
        return inequality, orthant


BACKEND = "numba" if _HAVE_NUMBA else "numpy"

if _HAVE_NUMBA:
    cimmino_apply = _cimmino_apply_numba
    proximity_parts = _proximity_parts_numba
else:
    cimmino_apply = _cimmino_apply_numpy
    proximity_parts = _proximity_parts_numpy

# every importable implementation, keyed by backend name (used by the
# benchmark and the cross-backend agreement tests)
IMPLEMENTATIONS = {
    "numpy": {
        "cimmino_apply": _cimmino_apply_numpy,
        "proximity_parts": _proximity_parts_numpy,
    }
}
if _HAVE_NUMBA:
    IMPLEMENTATIONS["numba"] = {
        "cimmino_apply": _cimmino_apply_numba,
        "proximity_parts": _proximity_parts_numba,
    }
