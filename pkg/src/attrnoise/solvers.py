"""Optimal-classifier computation.

Two routes:

* closed-form squared-loss minimization through exact population moments or
  empirical normal equations (``fit_squared_population``,
  ``fit_squared_sample``), backed by a small elimination solver with an
  explicit residual;
* exhaustive 0-1 minimization: a dense grid sweep over a two-parameter
  classifier family (``grid_minimize_zero_one``) and, for two-dimensional
  data, an exact combinatorial oracle that enumerates every linear dichotomy
  of the atom set (``exact_minimize_zero_one_2d``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from ._kernels import risk_surface_kernel
from .core import (
    BinaryPoint,
    DimensionMismatchError,
    LinearClassifier,
    PopulationDistribution,
    SampleDataset,
)
from .risk import zero_one_risk

#: Pivot magnitude below which elimination refuses to continue.
PIVOT_TOLERANCE = 1e-12
#: Ridge strength for the singular-moment fallback.
RIDGE_LAMBDA = 1e-8
#: Default tie tolerance when collecting grid minimizers.
TIE_EPSILON = 1e-12
#: Relative perturbation used by the exact 2-D oracle.
ORACLE_EPSILON = 1e-6
#: Atom budget for the exact 2-D oracle.
ORACLE_MAX_ATOMS = 64


class SingularMatrixError(ValueError):
    """Raised when elimination meets a pivot below ``PIVOT_TOLERANCE``."""


class LinearSolution(NamedTuple):
    """Solution vector plus the max-norm residual of the original system."""

    solution: np.ndarray
    residual: float


@dataclass(frozen=True, eq=False)
class MomentSummary:
    """Exact second moment E[X X^T] and cross moment E[Y X] of a population."""

    second_moment: np.ndarray
    cross_moment: np.ndarray

    def __post_init__(self):
        m = self.second_moment
        if m.ndim != 2 or m.shape[0] != m.shape[1] or self.cross_moment.shape != (m.shape[0],):
            raise ValueError("moment shapes inconsistent")
        if np.max(np.abs(m - m.T)) > 1e-12:
            raise ValueError("second moment not symmetric")
        if np.max(np.abs(np.diag(m) - 1.0)) > 1e-9:
            raise ValueError("second-moment diagonal must be all ones for signed-unit features")


@dataclass(frozen=True)
class GridSpec:
    """Per-parameter (lo, hi, step) ranges for the searched coefficients."""

    ranges: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        rs = tuple((float(lo), float(hi), float(step)) for lo, hi, step in self.ranges)
        if not rs:
            raise ValueError("grid needs at least one parameter range")
        for lo, hi, step in rs:
            if not lo < hi:
                raise ValueError(f"grid range needs lo < hi, got ({lo}, {hi})")
            if not step > 0:
                raise ValueError(f"grid step must be positive, got {step}")
        object.__setattr__(self, "ranges", rs)

    @classmethod
    def square(cls, lo: float = -5.0, hi: float = 5.0, step: float = 0.1) -> "GridSpec":
        """The default two-parameter grid: [-5, 5] at step 0.1 on both axes."""
        return cls(((lo, hi, step), (lo, hi, step)))

    def axis(self, index: int) -> np.ndarray:
        """Grid values lo, lo+step, ... rounded to 12 decimals.

        The rounding makes coordinates equal to their canonical decimal
        literals (e.g. exactly -4.0 rather than -4.0000000000000004), so
        membership checks against published coefficients are exact.
        """
        lo, hi, step = self.ranges[index]
        count = int(math.floor((hi - lo) / step + 1e-9)) + 1
        return np.round(lo + step * np.arange(count), 12)


@dataclass(frozen=True)
class Parameterization:
    """A two-parameter slice of the linear family searched by the grid."""

    name: str
    dimension: int
    beta2: float
    param_names: tuple[str, str]
    build: Callable[[float, float], LinearClassifier]

    def classifier(self, t1: float, c: float) -> LinearClassifier:
        return self.build(t1, c)


PARAMETERIZATIONS: dict[str, Parameterization] = {
    # f = t1*x1 + x2 + c over 2-D data (second coefficient pinned to +1)
    "slope2d_pos": Parameterization(
        "slope2d_pos", 2, 1.0, ("b1", "c"),
        lambda t1, c: LinearClassifier.affine((t1, 1.0), c),
    ),
    # f = t1*x1 - x2 + c (second coefficient pinned to -1)
    "slope2d_neg": Parameterization(
        "slope2d_neg", 2, -1.0, ("b1", "c"),
        lambda t1, c: LinearClassifier.affine((t1, -1.0), c),
    ),
    # f = b*x + c over 1-D data
    "affine1d": Parameterization(
        "affine1d", 1, 0.0, ("b", "c"),
        lambda t1, c: LinearClassifier.affine((t1,), c),
    ),
}


@dataclass(frozen=True, eq=False)
class RiskSurface:
    """Dense 0-1 risk over a two-parameter grid plus its minimizer set.

    ``minimizers`` holds every grid point whose risk is within
    ``tie_epsilon`` of the minimum, as rows (t1, c).
    """

    parameterization: str
    param_names: tuple[str, str]
    axes: tuple[np.ndarray, np.ndarray]
    risks: np.ndarray
    min_risk: float
    minimizers: np.ndarray
    tie_epsilon: float

    def __post_init__(self):
        if self.minimizers.shape[0] == 0:
            raise ValueError("minimizer set must be non-empty")

    def contains_minimizer(self, t1: float, c: float, atol: float = 1e-9) -> bool:
        """True if (t1, c) is in the minimizer set (coordinates within atol)."""
        hit = (np.abs(self.minimizers[:, 0] - t1) <= atol) & (
            np.abs(self.minimizers[:, 1] - c) <= atol
        )
        return bool(np.any(hit))

    def minimizer_classifiers(self, limit: int | None = None) -> list[LinearClassifier]:
        param = PARAMETERIZATIONS[self.parameterization]
        rows = self.minimizers if limit is None else self.minimizers[:limit]
        return [param.classifier(float(t1), float(c)) for t1, c in rows]


def population_moments(d: PopulationDistribution) -> MomentSummary:
    """Exact weighted moments E[X X^T] and E[Y X] of a population.

    Each entry is a correctly rounded sum (math.fsum) over atoms, so moment
    identities hold to the last representable digit.
    """
    x = d.feature_matrix()
    y = d.labels()
    w = d.weights()
    n = d.n
    second = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i, n):
            v = math.fsum(w[k] * x[k, i] * x[k, j] for k in range(d.num_atoms))
            second[i, j] = v
            second[j, i] = v
    cross = np.array(
        [
            math.fsum(w[k] * y[k] * x[k, i] for k in range(d.num_atoms))
            for i in range(n)
        ],
        dtype=np.float64,
    )
    return MomentSummary(second, cross)


def solve_linear_system(a, b) -> LinearSolution:
    """Solve ``a x = b`` by Gaussian elimination with partial pivoting.

    Returns the solution together with the max-norm residual ``|a x - b|``
    of the original system.  Raises :class:`SingularMatrixError` when the
    best available pivot falls below ``PIVOT_TOLERANCE``.
    """
    a0 = np.array(a, dtype=np.float64)
    b0 = np.array(b, dtype=np.float64)
    if a0.ndim != 2 or a0.shape[0] != a0.shape[1]:
        raise ValueError("coefficient matrix must be square")
    n = a0.shape[0]
    if b0.shape != (n,):
        raise ValueError("right-hand side length must match the matrix")

    u = a0.copy()
    rhs = b0.copy()
    for col in range(n):
        piv = col + int(np.argmax(np.abs(u[col:, col])))
        if abs(u[piv, col]) < PIVOT_TOLERANCE:
            raise SingularMatrixError(f"pivot {u[piv, col]!r} in column {col}")
        if piv != col:
            u[[col, piv]] = u[[piv, col]]
            rhs[[col, piv]] = rhs[[piv, col]]
        for row in range(col + 1, n):
            factor = u[row, col] / u[col, col]
            if factor != 0.0:
                u[row, col:] -= factor * u[col, col:]
                rhs[row] -= factor * rhs[col]

    x = np.empty(n, dtype=np.float64)
    for row in range(n - 1, -1, -1):
        x[row] = (rhs[row] - float(u[row, row + 1 :] @ x[row + 1 :])) / u[row, row]
    residual = float(np.max(np.abs(a0 @ x - b0))) if n else 0.0
    return LinearSolution(x, residual)


def fit_squared_population(d: PopulationDistribution) -> LinearClassifier:
    """Closed-form squared-loss minimizer over origin-passing classifiers.

    Solves ``E[X X^T] beta = E[Y X]``.  A singular moment matrix falls back
    to the ridge system ``(E[X X^T] + lambda I) beta = E[Y X]`` and flags the
    result as regularized.
    """
    moments = population_moments(d)
    try:
        solution = solve_linear_system(moments.second_moment, moments.cross_moment)
        regularized = False
    except SingularMatrixError:
        ridged = moments.second_moment + RIDGE_LAMBDA * np.eye(d.n)
        solution = solve_linear_system(ridged, moments.cross_moment)
        regularized = True
    return LinearClassifier(tuple(solution.solution), regularized=regularized)


def fit_squared_sample(s: SampleDataset, intercept: bool = False) -> LinearClassifier:
    """Least-squares fit of a sample via the empirical normal equations.

    With ``intercept`` the design matrix gains a constant +1 column (a
    coordinate noise never touches), and the returned classifier is affine.
    Rank-deficient systems fall back to the ridge solve and are flagged.
    """
    x = s.feature_matrix()
    if intercept:
        x = np.hstack([x, np.ones((s.size, 1))])
    y = s.labels()
    # averaged normal equations: same solution, weights on the moment scale
    a = (x.T @ x) / s.size
    b = (x.T @ y) / s.size
    try:
        solution = solve_linear_system(a, b)
        regularized = False
    except SingularMatrixError:
        solution = solve_linear_system(a + RIDGE_LAMBDA * np.eye(a.shape[0]), b)
        regularized = True
    coef = solution.solution
    if intercept:
        return LinearClassifier.affine(coef[:-1], coef[-1], regularized=regularized)
    return LinearClassifier(tuple(coef), regularized=regularized)


def squared_risk_gradient(d: PopulationDistribution, f: LinearClassifier) -> tuple[np.ndarray, float]:
    """Analytic gradient of the squared risk at ``f``.

    Returns (d/d weights, d/d intercept); the intercept component is
    meaningful only for affine classifiers but is always reported.
    """
    f.require_dimension(d.n)
    x = d.feature_matrix()
    y = d.labels()
    w = d.weights()
    residual = x @ np.asarray(f.weights) + f.intercept - y
    grad_w = 2.0 * (w * residual) @ x
    grad_c = 2.0 * float(np.dot(w, residual))
    return grad_w, grad_c


def grid_minimize_zero_one(
    d: PopulationDistribution,
    grid: GridSpec | None = None,
    parameterization: str = "slope2d_pos",
    tie_epsilon: float = TIE_EPSILON,
) -> RiskSurface:
    """Evaluate the 0-1 risk at every grid point of a two-parameter family.

    Returns the full surface plus the tie-tolerant minimizer set (every grid
    point within ``tie_epsilon`` of the minimum).
    """
    try:
        param = PARAMETERIZATIONS[parameterization]
    except KeyError:
        raise ValueError(f"unknown parameterization {parameterization!r}") from None
    if d.n != param.dimension:
        raise DimensionMismatchError(
            f"parameterization {param.name} needs dimension {param.dimension}, got {d.n}"
        )
    if grid is None:
        grid = GridSpec.square()
    if len(grid.ranges) != 2:
        raise ValueError("grid must define exactly two parameter ranges")

    ax0 = grid.axis(0)
    ax1 = grid.axis(1)
    x = d.feature_matrix()
    x1 = np.ascontiguousarray(x[:, 0])
    x2 = np.ascontiguousarray(x[:, 1]) if d.n == 2 else np.zeros(d.num_atoms)
    risks = risk_surface_kernel(ax0, ax1, x1, x2, param.beta2, d.labels(), d.weights())

    min_risk = float(risks.min())
    rows, cols = np.nonzero(risks <= min_risk + tie_epsilon)
    minimizers = np.column_stack((ax0[rows], ax1[cols]))
    return RiskSurface(
        parameterization=param.name,
        param_names=param.param_names,
        axes=(ax0, ax1),
        risks=risks,
        min_risk=min_risk,
        minimizers=minimizers,
        tie_epsilon=tie_epsilon,
    )


def exact_minimize_zero_one_2d(
    d: PopulationDistribution, epsilon: float = ORACLE_EPSILON
) -> tuple[LinearClassifier, float]:
    """Exact 0-1 minimizer over ALL affine classifiers for 2-D populations.

    Enumerates candidate separators: for every pair of distinct atom feature
    points, the line through both, perturbed by +-epsilon in rotation and in
    offset; axis-aligned lines between distinct coordinate values; and the
    two constant classifiers.  Every linear dichotomy of a finite planar
    point set is realized by some candidate (an optimal separator never
    needs a point exactly on the boundary, since a zero margin counts as an
    error), so the returned risk is the global affine optimum.

    One-dimensional populations are handled by embedding points at
    ``x2 = +1`` and folding the second coefficient into the intercept.
    """
    if d.num_atoms > ORACLE_MAX_ATOMS:
        raise ValueError(f"oracle accepts at most {ORACLE_MAX_ATOMS} atoms, got {d.num_atoms}")
    if d.n == 1:
        embedded = PopulationDistribution(
            tuple((BinaryPoint((p.features[0], 1), p.label), w) for p, w in d.atoms),
            2,
        )
        best, risk = exact_minimize_zero_one_2d(embedded, epsilon)
        folded = LinearClassifier.affine(
            (best.weights[0],), best.weights[1] + best.intercept
        )
        return folded, zero_one_risk(d, folded)
    if d.n != 2:
        raise DimensionMismatchError("exact oracle supports 1- or 2-D populations")

    points = sorted({p.features for p, _ in d.atoms})
    candidates: list[LinearClassifier] = [
        LinearClassifier.affine((0.0, 0.0), 1.0),
        LinearClassifier.affine((0.0, 0.0), -1.0),
    ]

    # axis-aligned separators between neighbouring distinct coordinates
    for axis in range(2):
        values = sorted({p[axis] for p in points})
        for lo, hi in zip(values, values[1:]):
            mid = (lo + hi) / 2.0
            normal = (1.0, 0.0) if axis == 0 else (0.0, 1.0)
            candidates.append(LinearClassifier.affine(normal, -mid))
            candidates.append(LinearClassifier.affine((-normal[0], -normal[1]), mid))

    # perturbed lines through every pair of distinct points
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            px, py = (float(v) for v in points[i])
            qx, qy = (float(v) for v in points[j])
            vx, vy = qx - px, qy - py
            n0x, n0y = -vy, vx
            midx, midy = (px + qx) / 2.0, (py + qy) / 2.0
            for rot in (-1.0, 0.0, 1.0):
                nx = n0x + rot * epsilon * vx
                ny = n0y + rot * epsilon * vy
                base = nx * midx + ny * midy
                scale = max(abs(nx), abs(ny), 1.0)
                for off in (-1.0, 0.0, 1.0):
                    t = base + off * epsilon * scale
                    candidates.append(LinearClassifier.affine((nx, ny), -t))
                    candidates.append(LinearClassifier.affine((-nx, -ny), t))

    best = candidates[0]
    best_risk = zero_one_risk(d, best)
    for f in candidates[1:]:
        r = zero_one_risk(d, f)
        if r < best_risk:
            best, best_risk = f, r
    return best, best_risk


def emit_risk_surface(surface: RiskSurface, path) -> None:
    """Write a surface as CSV rows ``p1,p2,risk`` (row-major, 17 digits)."""
    ax0, ax1 = surface.axes
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("p1,p2,risk\n")
        for i, t1 in enumerate(ax0):
            row = surface.risks[i]
            for j, c in enumerate(ax1):
                fh.write(f"{t1:.17g},{c:.17g},{row[j]:.17g}\n")
