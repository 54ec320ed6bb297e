import numpy as np
import pytest

from linsup.metrics import evaluate, objective, proximity, proximity_gradient
from linsup.problems import GeneratorSpec, Problem, generate_infeasible

from conftest import make_feasible


class TestProximity:
    def test_feasible_nonnegative_point_scores_zero(self):
        rng = np.random.default_rng(3)
        p, m = make_feasible(rng)
        assert proximity(m, p) == 0.0

    def test_hand_evaluated_inequality_term(self):
        # one row a=(1), b=0 at x=2: (1/2) * 2^2 / 1 = 2
        p = Problem(np.array([[1.0]]), np.array([0.0]), np.array([1.0]))
        assert proximity(np.array([2.0]), p) == pytest.approx(2.0, rel=1e-15)

    def test_hand_evaluated_orthant_term(self):
        # a=(1), b=5 at x=-3: inequality slack, orthant (1/2)*9 = 4.5
        p = Problem(np.array([[1.0]]), np.array([5.0]), np.array([1.0]))
        assert proximity(np.array([-3.0]), p) == pytest.approx(4.5, rel=1e-15)

    def test_zero_iff_feasible(self):
        rng = np.random.default_rng(11)
        p, m = make_feasible(rng, rows=5, cols=4)
        assert proximity(m, p) <= 1e-12
        # violate one inequality
        worst = np.argmax(p.a @ (m + 1.0) - p.b)
        bad = m + 10.0 * p.a[worst] / np.sqrt(p.row_norms_sq[worst])
        bad = np.maximum(bad, 0.0)
        if proximity(bad, p) == 0.0:
            bad = m - 1.0  # fall back to an orthant violation
        assert proximity(bad, p) > 1e-12
        assert proximity(np.minimum(m, -0.5), p) > 1e-12

    def test_row_scaling_invariance(self):
        rng = np.random.default_rng(13)
        a = rng.normal(size=(3, 4))
        b = rng.normal(size=3)
        c = np.ones(4)
        x = rng.normal(scale=5.0, size=4)
        base = proximity(x, Problem(a, b, c))
        for s in (0.25, 3.0, 1e3):
            a2 = a.copy()
            b2 = b.copy()
            a2[1] *= s
            b2[1] *= s
            assert proximity(x, Problem(a2, b2, c)) == pytest.approx(base, rel=1e-12)

    def test_gradient_matches_central_differences(self):
        rng = np.random.default_rng(19)
        p = generate_infeasible(GeneratorSpec(pair_count=4, cols=6, seed=19))
        checked = 0
        while checked < 30:
            x = rng.normal(scale=8.0, size=6)
            # reject points within 1e-6 of an activity kink
            if np.any(np.abs(p.a @ x - p.b) < 1e-6) or np.any(np.abs(x) < 1e-6):
                continue
            checked += 1
            grad = proximity_gradient(x, p)
            h = 1e-6
            for j in range(6):
                e = np.zeros(6)
                e[j] = h
                fd = (proximity(x + e, p) - proximity(x - e, p)) / (2 * h)
                assert grad[j] == pytest.approx(fd, rel=1e-5, abs=1e-10)


class TestObjective:
    def test_zero_vector(self):
        rng = np.random.default_rng(2)
        for _ in range(5):
            assert objective(rng.normal(size=4), np.zeros(4)) == 0.0

    def test_coordinate_extraction(self):
        x = np.array([4.0, -7.0, 2.5])
        for j in range(3):
            e = np.zeros(3)
            e[j] = 1.0
            assert objective(x, e) == x[j]

    def test_matches_loop_accumulated_dot(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            x = rng.normal(size=5)
            c = rng.normal(size=5)
            acc = 0.0
            for j in range(5):
                acc += x[j] * c[j]
            assert objective(x, c) == pytest.approx(acc, rel=1e-12)

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            objective(np.ones(3), np.ones(4))


def test_evaluate_bundles_both():
    p = Problem(np.array([[1.0]]), np.array([0.0]), np.array([2.0]))
    ev = evaluate(np.array([2.0]), p)
    assert ev.proximity == pytest.approx(2.0)
    assert ev.objective == pytest.approx(4.0)
