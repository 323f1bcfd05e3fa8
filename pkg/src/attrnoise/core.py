"""Domain types for noise-robust linear classification over signed binary features.

Everything downstream works on two representations of data:

* :class:`PopulationDistribution`: a finite, exactly weighted discrete
  distribution over labeled points of ``{-1,+1}^n``, used for closed-form
  (expectation-level) computations.
* :class:`SampleDataset`: an ordered finite sample of the same kind of
  points, used for empirical fits and experiments.

All types are immutable values after construction and safe to share between
workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

#: Absolute tolerance for "weights sum to one" checks.
WEIGHT_TOLERANCE = 1e-12


class DimensionMismatchError(ValueError):
    """Raised when an operation mixes objects of different feature dimension."""


def _as_signed_unit(value, what: str) -> int:
    v = int(value)
    if v != value or v not in (-1, 1):
        raise ValueError(f"{what} must be exactly -1 or +1, got {value!r}")
    return v


@dataclass(frozen=True)
class BinaryPoint:
    """A feature vector in ``{-1,+1}^n`` with a label in ``{-1,+1}``."""

    features: tuple[int, ...]
    label: int

    def __post_init__(self):
        feats = tuple(_as_signed_unit(v, "feature") for v in self.features)
        if not feats:
            raise ValueError("a point needs at least one feature")
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "label", _as_signed_unit(self.label, "label"))

    @property
    def n(self) -> int:
        return len(self.features)

    def flipped(self, mask: Sequence[bool]) -> "BinaryPoint":
        """Return the point with the masked attributes sign-flipped (label kept)."""
        if len(mask) != self.n:
            raise DimensionMismatchError("flip mask length does not match dimension")
        return BinaryPoint(
            tuple(-v if m else v for v, m in zip(self.features, mask)), self.label
        )


@dataclass(frozen=True)
class PopulationDistribution:
    """Finite weighted set of :class:`BinaryPoint` with weights summing to 1.

    Construct through :func:`make_population`, which normalizes, merges
    duplicate atoms and sorts canonically.  A corrupted distribution is the
    same type.
    """

    atoms: tuple[tuple[BinaryPoint, float], ...]
    n: int

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("population needs at least one atom")
        for point, weight in self.atoms:
            if point.n != self.n:
                raise DimensionMismatchError(
                    f"atom dimension {point.n} != population dimension {self.n}"
                )
            if not 0.0 <= weight <= 1.0:
                raise ValueError(f"atom weight {weight!r} outside [0, 1]")
        total = math.fsum(w for _, w in self.atoms)
        if abs(total - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError(f"weights sum to {total!r}, expected 1")

    def feature_matrix(self) -> np.ndarray:
        """Atom features as a float array of shape (num_atoms, n)."""
        return np.array([p.features for p, _ in self.atoms], dtype=np.float64)

    def labels(self) -> np.ndarray:
        return np.array([p.label for p, _ in self.atoms], dtype=np.float64)

    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms], dtype=np.float64)

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)


@dataclass(frozen=True)
class SampleDataset:
    """Ordered finite sample of labeled signed-binary points."""

    points: tuple[BinaryPoint, ...]
    n: int
    provenance: str = ""

    def __post_init__(self):
        if not self.points:
            raise ValueError("dataset needs at least one point")
        for p in self.points:
            if p.n != self.n:
                raise DimensionMismatchError(
                    f"point dimension {p.n} != dataset dimension {self.n}"
                )

    @classmethod
    def from_points(cls, points: Iterable[BinaryPoint], provenance: str = "") -> "SampleDataset":
        pts = tuple(points)
        if not pts:
            raise ValueError("dataset needs at least one point")
        return cls(pts, pts[0].n, provenance)

    @classmethod
    def from_arrays(cls, features, labels, provenance: str = "") -> "SampleDataset":
        points = tuple(
            BinaryPoint(tuple(int(v) for v in row), int(y))
            for row, y in zip(features, labels, strict=True)
        )
        return cls.from_points(points, provenance)

    def feature_matrix(self) -> np.ndarray:
        return np.array([p.features for p in self.points], dtype=np.float64)

    def labels(self) -> np.ndarray:
        return np.array([p.label for p in self.points], dtype=np.float64)

    @property
    def size(self) -> int:
        return len(self.points)

    def to_population(self) -> PopulationDistribution:
        """Uniform population over the sample's points (duplicates merge)."""
        w = 1.0 / self.size
        return make_population(
            (p.features, p.label, w) for p in self.points
        )


SY_DE = "syde"
ASY_IN = "asyin"


@dataclass(frozen=True)
class NoiseSpec:
    """Attribute-flip noise description.

    Two variants:

    * ``syde``: all attributes of a point flip together with one
      probability ``p`` (symmetric, dependent flips).
    * ``asyin``: attribute ``j`` flips with its own probability ``p_j``,
      independently across attributes.

    Labels are never changed by either model.
    """

    model: str
    rates: tuple[float, ...]

    def __post_init__(self):
        if self.model not in (SY_DE, ASY_IN):
            raise ValueError(f"unknown noise model {self.model!r}")
        rates = tuple(float(p) for p in self.rates)
        if not rates:
            raise ValueError("noise spec needs at least one rate")
        if self.model == SY_DE and len(rates) != 1:
            raise ValueError("syde takes exactly one flip probability")
        for p in rates:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"flip probability {p!r} outside [0, 1]")
        object.__setattr__(self, "rates", rates)

    @classmethod
    def syde(cls, p: float) -> "NoiseSpec":
        return cls(SY_DE, (float(p),))

    @classmethod
    def asyin(cls, ps: Iterable[float]) -> "NoiseSpec":
        return cls(ASY_IN, tuple(float(p) for p in ps))

    @property
    def p(self) -> float:
        """The single flip probability of a ``syde`` spec."""
        if self.model != SY_DE:
            raise ValueError("p is only defined for syde specs")
        return self.rates[0]

    def require_dimension(self, n: int):
        """Raise unless this spec can corrupt n-dimensional data."""
        if self.model == ASY_IN and len(self.rates) != n:
            raise DimensionMismatchError(
                f"asyin spec has {len(self.rates)} rates for dimension {n}"
            )

    def rate_vector(self, n: int) -> tuple[float, ...]:
        """Per-attribute flip probabilities, broadcast for ``syde``."""
        self.require_dimension(n)
        if self.model == SY_DE:
            return (self.rates[0],) * n
        return self.rates


@dataclass(frozen=True)
class LinearClassifier:
    """Linear classifier f(x) = weights . x + intercept.

    Predicted label is +1 where the decision value is strictly positive and
    -1 otherwise; the zero-margin accounting used by risk computations lives
    in module :mod:`attrnoise.risk`.  ``origin_passing`` distinguishes the
    intercept-free family (intercept identically 0) from the affine one.
    ``regularized`` flags fits that needed a ridge fallback and does not
    participate in equality.
    """

    weights: tuple[float, ...]
    intercept: float = 0.0
    origin_passing: bool = True
    regularized: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "intercept", float(self.intercept))
        if not self.weights:
            raise ValueError("classifier needs at least one weight")
        if self.origin_passing and self.intercept != 0.0:
            raise ValueError("origin-passing classifier must have intercept 0")

    @classmethod
    def affine(cls, weights: Iterable[float], intercept: float, *, regularized=False) -> "LinearClassifier":
        return cls(tuple(weights), float(intercept), origin_passing=False, regularized=regularized)

    @property
    def n(self) -> int:
        return len(self.weights)

    def require_dimension(self, n: int):
        if self.n != n:
            raise DimensionMismatchError(
                f"classifier dimension {self.n} does not match data dimension {n}"
            )

    def decision_value(self, features: Sequence[float]) -> float:
        if len(features) != self.n:
            raise DimensionMismatchError("feature length does not match classifier")
        # plain left-to-right accumulation; keeps scalar and array paths identical
        acc = self.intercept
        for w, x in zip(self.weights, features):
            acc += w * x
        return acc

    def decision_values(self, features: np.ndarray) -> np.ndarray:
        features = np.asarray(features, dtype=np.float64)
        if features.shape[-1] != self.n:
            raise DimensionMismatchError("feature width does not match classifier")
        return features @ np.asarray(self.weights) + self.intercept

    def predict(self, features: np.ndarray) -> np.ndarray:
        """Predicted labels; decision value 0 predicts -1."""
        d = self.decision_values(features)
        return np.where(d > 0.0, 1.0, -1.0)

    def scaled(self, factor: float) -> "LinearClassifier":
        if self.origin_passing:
            return LinearClassifier(tuple(factor * w for w in self.weights))
        return LinearClassifier.affine(
            (factor * w for w in self.weights), factor * self.intercept
        )


@dataclass(frozen=True)
class RiskReport:
    """Outcome of a robustness comparison (Definition-1 style).

    ``robust`` is true iff the clean 0-1 risk of the classifier fit on clean
    data equals, within ``tolerance``, the clean 0-1 risk of the classifier
    fit on corrupted data.
    """

    clean_risk_of_clean_opt: float
    clean_risk_of_noisy_opt: float
    robust: bool
    clean_optimizer: LinearClassifier
    noisy_optimizer: LinearClassifier
    tolerance: float = 1e-9

    def __post_init__(self):
        gap = abs(self.clean_risk_of_clean_opt - self.clean_risk_of_noisy_opt)
        if self.robust != (gap <= self.tolerance):
            raise ValueError("robust flag inconsistent with risks and tolerance")


def make_population(atoms) -> PopulationDistribution:
    """Build a normalized, deduplicated :class:`PopulationDistribution`.

    Parameters
    ----------
    atoms : iterable of (features, label, weight)
        Weights must be nonnegative and not all zero.  Duplicate
        (features, label) atoms are merged by weight addition; zero-weight
        atoms are dropped; weights are divided by their total unless the
        total is already 1 within ``WEIGHT_TOLERANCE`` (so re-applying the
        constructor to its own output is an exact no-op).

    Returns
    -------
    PopulationDistribution
        Atoms sorted canonically by (features, label).
    """
    merged: dict[tuple[tuple[int, ...], int], list[float]] = {}
    n = None
    for features, label, weight in atoms:
        w = float(weight)
        if w < 0.0:
            raise ValueError(f"negative atom weight {weight!r}")
        point = BinaryPoint(tuple(features), label)
        if n is None:
            n = point.n
        elif point.n != n:
            raise DimensionMismatchError(
                f"atom dimension {point.n} != population dimension {n}"
            )
        if w == 0.0:
            continue
        merged.setdefault((point.features, point.label), []).append(w)
    if n is None:
        raise ValueError("population needs at least one atom")
    if not merged:
        raise ValueError("all atom weights are zero")

    keys = sorted(merged)
    weights = [math.fsum(merged[k]) for k in keys]
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_TOLERANCE:
        weights = [w / total for w in weights]
    return PopulationDistribution(
        tuple(
            (BinaryPoint(feats, label), w)
            for (feats, label), w in zip(keys, weights)
        ),
        n,
    )
