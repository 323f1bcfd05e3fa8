"""Noise-robust linear classification over signed binary features.

Core objects: populations and samples of labeled points in {-1,+1}^n,
attribute-flip noise models that corrupt them (exactly for populations,
randomly for samples), risk functionals over the linear family, closed-form
squared-loss fits, exhaustive 0-1 minimization, reproduction checks for the
reference results, dataset parsers and a noise-injection experiment
harness.
"""
from ._kernels import BACKEND
from .core import (
    BinaryPoint,
    DimensionMismatchError,
    LinearClassifier,
    NoiseSpec,
    PopulationDistribution,
    RiskReport,
    SampleDataset,
    make_population,
)
from .noise import FlipPattern, corrupt_population, corrupt_sample, flip_patterns
from .risk import (
    TrialMetrics,
    evaluate_sample,
    robustness_check,
    squared_risk,
    zero_one_risk,
)
from .solvers import (
    GridSpec,
    LinearSolution,
    MomentSummary,
    RiskSurface,
    SingularMatrixError,
    exact_minimize_zero_one_2d,
    emit_risk_surface,
    fit_squared_population,
    fit_squared_sample,
    grid_minimize_zero_one,
    population_moments,
    solve_linear_system,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinaryPoint",
    "DimensionMismatchError",
    "FlipPattern",
    "GridSpec",
    "LinearClassifier",
    "LinearSolution",
    "MomentSummary",
    "NoiseSpec",
    "PopulationDistribution",
    "RiskReport",
    "RiskSurface",
    "SampleDataset",
    "SingularMatrixError",
    "TrialMetrics",
    "corrupt_population",
    "corrupt_sample",
    "evaluate_sample",
    "exact_minimize_zero_one_2d",
    "emit_risk_surface",
    "fit_squared_population",
    "fit_squared_sample",
    "flip_patterns",
    "grid_minimize_zero_one",
    "make_population",
    "population_moments",
    "robustness_check",
    "solve_linear_system",
    "squared_risk",
    "zero_one_risk",
    "__version__",
]
