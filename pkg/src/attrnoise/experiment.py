"""Noise-injection experiment harness.

Each trial: split the sample, corrupt the TRAINING attributes (the test
side stays clean), fit the squared-loss classifier, evaluate on the clean
test split.  Trials are aggregated per noise rate to mean and sample
standard deviation of accuracy and AM.

Seeding: trial ``t`` uses seed ``base_seed + t`` for both the split (via an
independent (seed, 1) stream) and the corruption (via per-point streams at a
large prime stride).  The same trial seeds are reused across noise rates,
so rates are compared on identical partitions with coupled flip draws.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import NoiseSpec, SampleDataset
from .noise import corrupt_sample
from .risk import TrialMetrics, evaluate_sample
from .solvers import fit_squared_sample

#: Keeps per-point corruption streams of different trials disjoint
#: for any sample smaller than the stride.
_CORRUPT_SEED_STRIDE = 1_000_003


@dataclass(frozen=True)
class ExperimentConfig:
    """Knobs of one experiment run."""

    dataset: str
    noise_rates: tuple[float, ...]
    trials: int = 15
    train_fraction: float = 0.8
    base_seed: int = 0
    intercept: bool = False

    def __post_init__(self):
        object.__setattr__(self, "noise_rates", tuple(float(p) for p in self.noise_rates))
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train fraction must lie strictly between 0 and 1")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        for p in self.noise_rates:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"noise rate {p!r} outside [0, 1]")


@dataclass(frozen=True)
class TrialRecord:
    """One trial's provenance and metrics; ``p`` is None for the clean baseline."""

    dataset: str
    p: float | None
    trial: int
    seed: int
    metrics: TrialMetrics


@dataclass(frozen=True)
class AggregateRow:
    """Mean/SD accuracy and AM over the trials at one noise rate.

    ``p`` is None for the clean-baseline row.  ``sd_flagged`` marks rows
    where a single trial left the sample SD undefined (reported as 0).
    """

    dataset: str
    p: float | None
    mean_accuracy: float
    sd_accuracy: float
    mean_am: float
    sd_am: float
    sd_flagged: bool = False


def split(s: SampleDataset, fraction: float, seed: int) -> tuple[SampleDataset, SampleDataset]:
    """Uniform random split; the first ceil(fraction*m) points go to train."""
    if s.size < 2:
        raise ValueError("dataset too small to split")
    k = math.ceil(fraction * s.size)
    if k == 0 or k >= s.size:
        raise ValueError(f"degenerate split sizes ({k}, {s.size - k})")
    perm = np.random.default_rng((seed, 1)).permutation(s.size)
    train = tuple(s.points[i] for i in perm[:k])
    test = tuple(s.points[i] for i in perm[k:])
    return (
        SampleDataset(train, s.n, s.provenance),
        SampleDataset(test, s.n, s.provenance),
    )


def run_trial(s: SampleDataset, p: float, seed: int, cfg: ExperimentConfig) -> TrialMetrics:
    """split -> corrupt TRAIN attributes -> fit -> evaluate on clean test."""
    train, test = split(s, cfg.train_fraction, seed)
    corrupted = corrupt_sample(train, NoiseSpec.syde(p), seed * _CORRUPT_SEED_STRIDE)
    classifier = fit_squared_sample(corrupted, intercept=cfg.intercept)
    return evaluate_sample(test, classifier)


def run_trials(s: SampleDataset, cfg: ExperimentConfig) -> list[TrialRecord]:
    """All per-trial records: the clean baseline first, then each noise rate.

    The baseline runs the identical pipeline at rate 0 (zero noise flips
    nothing), so with shared trial seeds its numbers coincide with an
    explicit p=0 row; it is still reported separately for reference.
    """
    records = []
    rates: list[float | None] = [None, *cfg.noise_rates]
    for p in rates:
        for t in range(cfg.trials):
            seed = cfg.base_seed + t
            metrics = run_trial(s, 0.0 if p is None else p, seed, cfg)
            records.append(TrialRecord(cfg.dataset, p, t, seed, metrics))
    return records


def aggregate_trials(records: list[TrialRecord]) -> list[AggregateRow]:
    """Aggregate per-trial records to one row per rate, baseline first."""
    by_rate: dict[float | None, list[TrialRecord]] = {}
    order: list[float | None] = []
    for rec in records:
        if rec.p not in by_rate:
            by_rate[rec.p] = []
            order.append(rec.p)
        by_rate[rec.p].append(rec)

    rows = []
    for p in order:
        group = by_rate[p]
        acc = np.array([r.metrics.accuracy for r in group])
        am = np.array([r.metrics.am for r in group])
        single = len(group) == 1
        rows.append(
            AggregateRow(
                dataset=group[0].dataset,
                p=p,
                mean_accuracy=float(acc.mean()),
                sd_accuracy=0.0 if single else float(acc.std(ddof=1)),
                mean_am=float(am.mean()),
                sd_am=0.0 if single else float(am.std(ddof=1)),
                sd_flagged=single,
            )
        )
    return rows


def run_experiment(s: SampleDataset, cfg: ExperimentConfig) -> list[AggregateRow]:
    """Mean/SD accuracy and AM per configured noise rate (baseline row first)."""
    return aggregate_trials(run_trials(s, cfg))


def _fmt_rate(p: float | None) -> str:
    return "clean" if p is None else repr(p)


def emit_results(rows, path, per_trial=None, per_trial_path=None) -> None:
    """Write aggregate rows as CSV; optionally a long-format per-trial file.

    Output is a pure function of the inputs (reruns are byte-identical).
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("dataset,p,mean_acc,sd_acc,mean_am,sd_am\n")
        for row in rows:
            fh.write(
                f"{row.dataset},{_fmt_rate(row.p)},{row.mean_accuracy!r},"
                f"{row.sd_accuracy!r},{row.mean_am!r},{row.sd_am!r}\n"
            )
    if per_trial is not None and per_trial_path is not None:
        with open(per_trial_path, "w", encoding="utf-8") as fh:
            fh.write("dataset,p,trial,seed,accuracy,am\n")
            for rec in per_trial:
                fh.write(
                    f"{rec.dataset},{_fmt_rate(rec.p)},{rec.trial},{rec.seed},"
                    f"{rec.metrics.accuracy!r},{rec.metrics.am!r}\n"
                )
