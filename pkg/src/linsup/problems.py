"""Problem data for systems ``Ax <= b, x >= 0`` with a linear objective.

Holds the dense instance container, the deterministic generator for
structurally infeasible instances built from opposing half-space pairs,
and a line-oriented text file format for instances.
"""

from dataclasses import dataclass

import numpy as np

FILE_MAGIC = "LINSUP-PROBLEM 1"


class ProblemFormatError(ValueError):
    """Raised when an instance file does not conform to the format."""


class Problem:
    """One instance: matrix ``a`` (I x J), right-hand side ``b``, objective ``c``.

    Arrays are converted to C-contiguous float64, validated (finite values,
    no zero rows) and frozen; instances are safe to share across threads.
    ``row_norms_sq[i]`` caches ``||a[i]||^2``.
    """

    def __init__(self, a, b, c):
        a = np.ascontiguousarray(a, dtype=np.float64)
        b = np.ascontiguousarray(b, dtype=np.float64)
        c = np.ascontiguousarray(c, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise ValueError(f"matrix must be 2-D with positive shape, got {a.shape}")
        rows, cols = a.shape
        if b.shape != (rows,):
            raise ValueError(f"b has shape {b.shape}, expected ({rows},)")
        if c.shape != (cols,):
            raise ValueError(f"c has shape {c.shape}, expected ({cols},)")
        for name, arr in (("a", a), ("b", b), ("c", c)):
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite value in {name}")
        row_norms_sq = np.einsum("ij,ij->i", a, a)
        if not np.all(row_norms_sq > 0.0):
            bad = int(np.argmin(row_norms_sq))
            raise ValueError(f"row {bad} of the matrix is zero")
        self.a = a
        self.b = b
        self.c = c
        self.row_norms_sq = row_norms_sq
        for arr in (self.a, self.b, self.c, self.row_norms_sq):
            arr.setflags(write=False)

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __repr__(self):
        return f"Problem(rows={self.rows}, cols={self.cols})"


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters for the opposing-pair infeasible instance generator.

    The generated system has ``2 * pair_count`` rows: the second half is the
    exact negation of the first, and the right-hand sides leave a positive
    gap between each pair of parallel half-spaces, so the system has no
    solution by construction.  Value ranges are open intervals.
    """

    pair_count: int
    cols: int
    seed: int = 0
    a_range: tuple[float, float] = (-1.0, 1.0)
    b_range: tuple[float, float] = (0.0, 100.0)
    gap_range: tuple[float, float] = (100.0, 200.0)
    c_range: tuple[float, float] = (-2.0, 1.0)

    def __post_init__(self):
        if self.pair_count < 1:
            raise ValueError("pair_count must be >= 1")
        if self.cols < 1:
            raise ValueError("cols must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        for name in ("a_range", "b_range", "gap_range", "c_range"):
            lo, hi = getattr(self, name)
            if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
                raise ValueError(f"{name} must be a nonempty finite interval, got ({lo}, {hi})")


def _sample_rows(rng, count, cols, lo, hi):
    rows = rng.uniform(lo, hi, size=(count, cols))
    for t in range(count):
        # an all-zero row would poison every projection; probability zero for
        # continuous ranges, but resample defensively
        while not np.any(rows[t]):
            rows[t] = rng.uniform(lo, hi, size=cols)
    return rows


def generate_infeasible(spec: GeneratorSpec) -> Problem:
    """Build a structurally infeasible instance from ``spec``.

    Deterministic: the stream is PCG64 seeded with ``spec.seed``, consumed in
    a fixed order (matrix rows first, row-major; then right-hand sides; then
    gaps; then the objective).  Identical specs give bit-identical output.

    Row ``pair_count + t`` is ``-row t`` and its right-hand side is
    ``-b[t] - gap[t]``; summing the pair of inequalities yields
    ``0 <= -gap[t] < 0``, an infeasibility certificate checked here before
    returning.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    top = _sample_rows(rng, spec.pair_count, spec.cols, *spec.a_range)
    b_top = rng.uniform(*spec.b_range, size=spec.pair_count)
    gaps = rng.uniform(*spec.gap_range, size=spec.pair_count)
    c = rng.uniform(*spec.c_range, size=spec.cols)

    a = np.vstack([top, -top])
    b = np.concatenate([b_top, -b_top - gaps])
    problem = Problem(a, b, c)
    if spec.gap_range[0] > 0.0:
        cert = pair_certificate(problem, spec.pair_count)
        if not np.all(cert < 0.0):
            raise RuntimeError("generated instance failed its infeasibility certificate")
    return problem


def pair_certificate(problem: Problem, pair_count: int) -> np.ndarray:
    """Per-pair sums ``b[t] + b[pair_count + t]`` for an opposing-pair instance.

    Adding the two inequalities of pair ``t`` gives ``0 <= b[t] + b[pair_count+t]``,
    so a strictly negative entry certifies that the pair (hence the whole
    system) is infeasible.  Raises if the rows are not exact opposing pairs.
    """
    if problem.rows != 2 * pair_count:
        raise ValueError(f"expected {2 * pair_count} rows, problem has {problem.rows}")
    top = problem.a[:pair_count]
    bottom = problem.a[pair_count:]
    if np.any(top + bottom != 0.0):
        raise ValueError("rows are not opposing pairs")
    return problem.b[:pair_count] + problem.b[pair_count:]


def _format_real(v: float) -> str:
    # 17 significant decimal digits round-trip any float64 exactly
    return format(v, ".17g")


def save_problem(problem: Problem, path) -> None:
    """Write ``problem`` to ``path`` in the line-oriented text format."""
    lines = [FILE_MAGIC, f"I {problem.rows} J {problem.cols}"]
    for i in range(problem.rows):
        lines.append(" ".join(_format_real(v) for v in problem.a[i]))
    lines.append(" ".join(_format_real(v) for v in problem.b))
    lines.append(" ".join(_format_real(v) for v in problem.c))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines))
        fh.write("\n")


def _parse_reals(line: str, expected: int, what: str) -> np.ndarray:
    tokens = line.split()
    if len(tokens) != expected:
        raise ProblemFormatError(f"{what}: expected {expected} values, found {len(tokens)}")
    try:
        values = np.array([float(t) for t in tokens], dtype=np.float64)
    except ValueError as exc:
        raise ProblemFormatError(f"{what}: {exc}") from None
    if not np.all(np.isfinite(values)):
        raise ProblemFormatError(f"{what}: non-finite value")
    return values


def load_problem(path) -> Problem:
    """Read an instance written by :func:`save_problem`."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != FILE_MAGIC:
        raise ProblemFormatError(f"missing '{FILE_MAGIC}' header")
    if len(lines) < 2:
        raise ProblemFormatError("missing dimension line")
    dims = lines[1].split()
    if len(dims) != 4 or dims[0] != "I" or dims[2] != "J":
        raise ProblemFormatError(f"bad dimension line: {lines[1]!r}")
    try:
        rows, cols = int(dims[1]), int(dims[3])
    except ValueError:
        raise ProblemFormatError(f"bad dimension line: {lines[1]!r}") from None
    if rows < 1 or cols < 1:
        raise ProblemFormatError(f"dimensions must be positive, got I={rows} J={cols}")
    body = [ln for ln in lines[2:] if ln.strip()]
    if len(body) != rows + 2:
        raise ProblemFormatError(
            f"expected {rows} matrix rows plus b and c lines, found {len(body)} data lines"
        )
    a = np.empty((rows, cols), dtype=np.float64)
    for i in range(rows):
        a[i] = _parse_reals(body[i], cols, f"matrix row {i}")
    b = _parse_reals(body[rows], rows, "right-hand side")
    c = _parse_reals(body[rows + 1], cols, "objective")
    try:
        return Problem(a, b, c)
    except ValueError as exc:
        raise ProblemFormatError(str(exc)) from None
