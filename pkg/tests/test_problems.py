import numpy as np
import pytest

from linsup.problems import (
    GeneratorSpec,
    Problem,
    ProblemFormatError,
    _sample_rows,
    generate_infeasible,
    load_problem,
    pair_certificate,
    save_problem,
)


class TestProblem:
    def test_row_norms_match_loop_accumulation(self):
        rng = np.random.default_rng(5)
        a = rng.normal(size=(7, 5))
        p = Problem(a, np.ones(7), np.ones(5))
        for i in range(7):
            acc = 0.0
            for j in range(5):
                acc += a[i, j] * a[i, j]
            assert p.row_norms_sq[i] == pytest.approx(acc, rel=1e-15)

    def test_rejects_zero_row(self):
        a = np.array([[1.0, 2.0], [0.0, 0.0]])
        with pytest.raises(ValueError, match="row 1"):
            Problem(a, np.ones(2), np.ones(2))

    def test_rejects_nonfinite(self):
        a = np.array([[1.0, np.inf]])
        with pytest.raises(ValueError, match="non-finite"):
            Problem(a, np.ones(1), np.ones(2))
        with pytest.raises(ValueError, match="non-finite"):
            Problem(np.ones((1, 2)), np.array([np.nan]), np.ones(2))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ValueError):
            Problem(np.ones((2, 3)), np.ones(3), np.ones(3))
        with pytest.raises(ValueError):
            Problem(np.ones((2, 3)), np.ones(2), np.ones(2))
        with pytest.raises(ValueError):
            Problem(np.ones((0, 3)), np.ones(0), np.ones(3))

    def test_arrays_frozen(self):
        p = Problem(np.ones((1, 2)), np.ones(1), np.ones(2))
        with pytest.raises(ValueError):
            p.a[0, 0] = 2.0


class TestGenerator:
    def test_full_scale_dimensions_and_pairing(self):
        p = generate_infeasible(GeneratorSpec(pair_count=1250, cols=2000, seed=1))
        assert p.rows == 2500 and p.cols == 2000
        assert not (p.a[:1250] + p.a[1250:]).any()  # exact negation

    def test_pair_certificate_negative(self):
        spec = GeneratorSpec(pair_count=8, cols=5, seed=9)
        p = generate_infeasible(spec)
        cert = pair_certificate(p, 8)
        # adding the two inequalities of a pair gives 0 <= cert[t] < 0
        assert np.all(cert < 0.0)
        assert np.all(cert >= -200.0) and np.all(cert <= -100.0)

    def test_deterministic_bit_identical(self):
        spec = GeneratorSpec(pair_count=2, cols=3, seed=42)
        p1 = generate_infeasible(spec)
        p2 = generate_infeasible(spec)
        assert p1.a.tobytes() == p2.a.tobytes()
        assert p1.b.tobytes() == p2.b.tobytes()
        assert p1.c.tobytes() == p2.c.tobytes()

    def test_different_seeds_differ(self):
        a = generate_infeasible(GeneratorSpec(pair_count=2, cols=3, seed=1))
        b = generate_infeasible(GeneratorSpec(pair_count=2, cols=3, seed=2))
        assert a.a.tobytes() != b.a.tobytes()

    def test_sampling_ranges(self):
        spec = GeneratorSpec(pair_count=50, cols=40, seed=3)
        p = generate_infeasible(spec)
        top = p.a[:50]
        assert top.min() > -1.0 and top.max() < 1.0
        assert p.b[:50].min() > 0.0 and p.b[:50].max() < 100.0
        gaps = -(p.b[50:] + p.b[:50])
        assert gaps.min() > 100.0 and gaps.max() < 200.0
        assert p.c.min() > -2.0 and p.c.max() < 1.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"pair_count": 0, "cols": 3},
            {"pair_count": 3, "cols": 0},
            {"pair_count": 3, "cols": 3, "a_range": (1.0, 1.0)},
            {"pair_count": 3, "cols": 3, "b_range": (5.0, 2.0)},
            {"pair_count": 3, "cols": 3, "seed": -1},
        ],
    )
    def test_rejects_degenerate_spec(self, kwargs):
        with pytest.raises(ValueError):
            GeneratorSpec(**kwargs)

    def test_zero_row_resampled(self):
        class StubRng:
            def __init__(self):
                self.resamples = 0
                self.first = True

            def uniform(self, lo, hi, size=None):
                if self.first:
                    self.first = False
                    block = np.ones(size)
                    block[1] = 0.0
                    return block
                self.resamples += 1
                return np.full(size, 0.5)

        rng = StubRng()
        rows = _sample_rows(rng, 3, 4, -1.0, 1.0)
        assert rng.resamples == 1
        assert np.all(rows[1] == 0.5)
        assert np.all(rows[0] == 1.0) and np.all(rows[2] == 1.0)

    def test_pair_certificate_rejects_non_pairs(self):
        p = Problem(np.ones((2, 2)), np.ones(2), np.ones(2))
        with pytest.raises(ValueError, match="opposing"):
            pair_certificate(p, 1)
        with pytest.raises(ValueError, match="rows"):
            pair_certificate(p, 2)


class TestFileFormat:
    def test_round_trip_bit_exact(self, tmp_path):
        p = generate_infeasible(GeneratorSpec(pair_count=2, cols=3, seed=8))
        path = tmp_path / "instance.txt"
        save_problem(p, path)
        q = load_problem(path)
        assert p.a.tobytes() == q.a.tobytes()
        assert p.b.tobytes() == q.b.tobytes()
        assert p.c.tobytes() == q.c.tobytes()
        assert p.row_norms_sq.tobytes() == q.row_norms_sq.tobytes()

    def test_round_trip_awkward_values(self, tmp_path):
        a = np.array([[1e-300, -1.0], [0.1, 3e200]])
        b = np.array([1 / 3, -2 / 7])
        c = np.array([np.pi, np.nextafter(1.0, 2.0)])
        p = Problem(a, b, c)
        path = tmp_path / "awkward.txt"
        save_problem(p, path)
        q = load_problem(path)
        assert p.a.tobytes() == q.a.tobytes()
        assert p.c.tobytes() == q.c.tobytes()

    def test_rejects_bad_magic(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("NOT-A-PROBLEM\nI 1 J 1\n1\n1\n1\n")
        with pytest.raises(ProblemFormatError, match="header"):
            load_problem(path)

    def test_rejects_row_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text(
            "LINSUP-PROBLEM 1\nI 2 J 2\n1 0\n0 1\n1 1\n1 1\n1 1\n"
        )
        with pytest.raises(ProblemFormatError, match="data lines"):
            load_problem(path)

    def test_rejects_column_count_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("LINSUP-PROBLEM 1\nI 1 J 3\n1 2\n1\n1 2 3\n")
        with pytest.raises(ProblemFormatError, match="matrix row 0"):
            load_problem(path)

    def test_rejects_nonfinite_entry(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("LINSUP-PROBLEM 1\nI 1 J 2\n1 inf\n1\n1 1\n")
        with pytest.raises(ProblemFormatError, match="non-finite"):
            load_problem(path)

    def test_rejects_garbage_dimensions(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("LINSUP-PROBLEM 1\nI x J 2\n")
        with pytest.raises(ProblemFormatError, match="dimension"):
            load_problem(path)
