"""Risk functionals, classification metrics and the robustness check.

Zero-margin convention
----------------------
A point with decision value exactly 0 counts as an ERROR regardless of its
label: the error indicator is ``f(x) * y <= 0``.  Equivalently, the label
"predicted" at a zero margin is the one that mismatches the true label
(a y=+1 point at margin 0 is a false negative, a y=-1 point a false
positive).  This is the conservative choice and the one under which the
reference counter-example risks in :mod:`attrnoise.verify` are reachable.
It keeps ``accuracy == 1 - zero_one_risk`` exact on the matching uniform
population.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    LinearClassifier,
    NoiseSpec,
    PopulationDistribution,
    RiskReport,
    SampleDataset,
)

#: Default tolerance for exact population-level robustness comparisons.
DEFAULT_ROBUSTNESS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TrialMetrics:
    """Evaluation of one classifier on one sample.

    ``am`` is the arithmetic mean of the true-positive and true-negative
    rates.  If the sample contains a single class, ``am`` falls back to the
    recall of the present class and ``single_class`` is set.
    """

    accuracy: float
    am: float
    tp: int
    tn: int
    fp: int
    fn: int
    single_class: bool = False

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.tp, self.tn, self.fp, self.fn)

    @property
    def size(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


def zero_one_risk(d: PopulationDistribution, f: LinearClassifier) -> float:
    """Weighted misclassification mass of ``f`` on ``d``.

    Error indicator is ``f(x) * y <= 0`` (zero margin counts as error).
    Accumulates in atom order; callers comparing risks across classifiers
    that err on the same atoms get bitwise-equal sums.
    """
    f.require_dimension(d.n)
    risk = 0.0
    for point, weight in d.atoms:
        if f.decision_value(point.features) * point.label <= 0.0:
            risk += weight
    return risk


def squared_risk(d: PopulationDistribution, f: LinearClassifier) -> float:
    """Expected squared loss ``sum of weight * (y - f(x))^2`` on ``d``."""
    f.require_dimension(d.n)
    risk = 0.0
    for point, weight in d.atoms:
        residual = point.label - f.decision_value(point.features)
        risk += weight * residual * residual
    return risk


def evaluate_sample(s: SampleDataset, f: LinearClassifier) -> TrialMetrics:
    """Confusion counts, accuracy and AM of ``f`` on ``s``.

    Uses the zero-margin-is-error rule: decision value 0 yields the
    mismatching predicted label for either true class.
    """
    f.require_dimension(s.n)
    margins = f.decision_values(s.feature_matrix()) * s.labels()
    err = margins <= 0.0
    pos = s.labels() > 0
    tp = int(np.count_nonzero(pos & ~err))
    fn = int(np.count_nonzero(pos & err))
    tn = int(np.count_nonzero(~pos & ~err))
    fp = int(np.count_nonzero(~pos & err))
    m = tp + tn + fp + fn
    accuracy = (tp + tn) / m
    n_pos = tp + fn
    n_neg = tn + fp
    if n_pos and n_neg:
        am = (tp / n_pos + tn / n_neg) / 2.0
        single = False
    else:
        # one class absent: fall back to the recall of the present class
        am = tp / n_pos if n_pos else tn / n_neg
        single = True
    return TrialMetrics(accuracy, am, tp, tn, fp, fn, single_class=single)


def robustness_check(
    d: PopulationDistribution,
    spec: NoiseSpec,
    clean_opt: LinearClassifier,
    noisy_opt: LinearClassifier,
    tolerance: float = DEFAULT_ROBUSTNESS_TOLERANCE,
) -> RiskReport:
    """Compare clean 0-1 risks of the clean-fit and noisy-fit classifiers.

    Both risks are evaluated on the CLEAN distribution ``d``; ``spec`` is
    recorded context (it must at least match ``d``'s dimension).  ``robust``
    is true iff the risks agree within ``tolerance``.
    """
    spec.require_dimension(d.n)
    clean_opt.require_dimension(d.n)
    noisy_opt.require_dimension(d.n)
    r_clean = zero_one_risk(d, clean_opt)
    r_noisy = zero_one_risk(d, noisy_opt)
    return RiskReport(
        clean_risk_of_clean_opt=r_clean,
        clean_risk_of_noisy_opt=r_noisy,
        robust=abs(r_clean - r_noisy) <= tolerance,
        clean_optimizer=clean_opt,
        noisy_optimizer=noisy_opt,
        tolerance=tolerance,
    )
