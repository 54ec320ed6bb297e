import subprocess
import sys

import numpy as np
import pytest

from linsup import _kernels
from linsup.problems import GeneratorSpec, generate_infeasible


@pytest.mark.skipif("numba" not in _kernels.IMPLEMENTATIONS, reason="numba not importable")
class TestBackendAgreement:
    def test_cimmino_apply_matches(self):
        rng = np.random.default_rng(17)
        p = generate_infeasible(GeneratorSpec(pair_count=20, cols=30, seed=17))
        w = rng.uniform(0.1, 1.0, size=p.rows)
        w /= w.sum()
        for _ in range(10):
            x = rng.normal(scale=50.0, size=p.cols)
            got = {
                name: impl["cimmino_apply"](p.a, p.b, p.row_norms_sq, w, 1.7, x)
                for name, impl in _kernels.IMPLEMENTATIONS.items()
            }
            np.testing.assert_allclose(got["numba"], got["numpy"], rtol=1e-12, atol=1e-12)

    def test_proximity_parts_match(self):
        rng = np.random.default_rng(18)
        p = generate_infeasible(GeneratorSpec(pair_count=20, cols=30, seed=18))
        for _ in range(10):
            x = rng.normal(scale=50.0, size=p.cols)
            got = {
                name: impl["proximity_parts"](p.a, p.b, p.row_norms_sq, x)
                for name, impl in _kernels.IMPLEMENTATIONS.items()
            }
            for a, b in zip(got["numba"], got["numpy"]):
                assert a == pytest.approx(b, rel=1e-12, abs=1e-12)

    def test_kernel_is_run_to_run_deterministic(self):
        p = generate_infeasible(GeneratorSpec(pair_count=10, cols=12, seed=4))
        w = np.full(p.rows, 1.0 / p.rows)
        x = np.full(p.cols, 10.0)
        y1 = _kernels.cimmino_apply(p.a, p.b, p.row_norms_sq, w, 1.99, x)
        y2 = _kernels.cimmino_apply(p.a, p.b, p.row_norms_sq, w, 1.99, x)
        assert y1.tobytes() == y2.tobytes()


class TestBackendSelection:
    def _backend_under_env(self, value):
        return subprocess.run(
            [sys.executable, "-c", "from linsup import _kernels; print(_kernels.BACKEND)"],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "LINSUP_BACKEND": value},
        )

    def test_env_forces_numpy_fallback(self):
        out = self._backend_under_env("numpy")
        assert out.returncode == 0
        assert out.stdout.strip() == "numpy"

    def test_env_auto_default(self):
        out = self._backend_under_env("auto")
        assert out.returncode == 0
        assert out.stdout.strip() in ("numba", "numpy")

    def test_env_rejects_unknown_value(self):
        out = self._backend_under_env("cuda")
        assert out.returncode != 0
        assert "LINSUP_BACKEND" in out.stderr
