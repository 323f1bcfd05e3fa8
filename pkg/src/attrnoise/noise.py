"""Attribute corruption of populations (exact) and samples (randomized).

Population corruption expands the noise model into its full flip-pattern
mixture and applies it exactly: the corrupted distribution is
``sum over patterns of weight(pattern) * (population with pattern applied)``
with labels unchanged.  Sample corruption draws the flips per point from a
seeded generator.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import (
    ASY_IN,
    SY_DE,
    BinaryPoint,
    NoiseSpec,
    PopulationDistribution,
    SampleDataset,
    make_population,
)

#: Exact pattern enumeration is exponential in n; refuse beyond this.
MAX_EXACT_DIMENSION = 20


@dataclass(frozen=True)
class FlipPattern:
    """One attribute-flip pattern and its mixture weight."""

    mask: tuple[bool, ...]
    weight: float

    def __post_init__(self):
        if not 0.0 <= self.weight <= 1.0:
            raise ValueError(f"pattern weight {self.weight!r} outside [0, 1]")


def flip_patterns(spec: NoiseSpec, n: int) -> list[FlipPattern]:
    """Enumerate the flip-pattern mixture of ``spec`` for dimension ``n``.

    For ``syde`` only the all-false (weight 1-p) and all-true (weight p)
    patterns exist.  For ``asyin`` all 2^n masks appear, each weighted by the
    product of its per-attribute marginals; n > MAX_EXACT_DIMENSION is
    refused because the enumeration is exponential.
    """
    spec.require_dimension(n)
    if spec.model == SY_DE:
        p = spec.p
        return [
            FlipPattern((False,) * n, 1.0 - p),
            FlipPattern((True,) * n, p),
        ]
    if n > MAX_EXACT_DIMENSION:
        raise ValueError(
            f"exact asyin expansion needs 2^{n} patterns; limit is n <= {MAX_EXACT_DIMENSION}"
        )
    ps = spec.rates
    patterns = []
    for mask in itertools.product((False, True), repeat=n):
        w = 1.0
        for flipped, p in zip(mask, ps):
            w *= p if flipped else 1.0 - p
        patterns.append(FlipPattern(mask, w))
    return patterns


def corrupt_population(d: PopulationDistribution, spec: NoiseSpec) -> PopulationDistribution:
    """Exact noise-corrupted distribution (labels unchanged).

    Atoms that collide after flipping are merged by weight addition and the
    result is renormalized only if needed, so zero noise is an exact
    identity.
    """
    patterns = flip_patterns(spec, d.n)
    raw = []
    for pattern in patterns:
        for point, weight in d.atoms:
            flipped = point.flipped(pattern.mask) if any(pattern.mask) else point
            raw.append((flipped.features, flipped.label, weight * pattern.weight))
    return make_population(raw)


def corrupt_sample(s: SampleDataset, spec: NoiseSpec, seed: int) -> SampleDataset:
    """Randomly corrupt a sample's attributes; labels never change.

    Point ``k`` draws from its own stream seeded ``seed + k``, so the
    corruption of one point does not depend on how many other points the
    dataset holds or their order.  Bit-identical across runs for a fixed
    seed.
    """
    spec.require_dimension(s.n)
    rates = spec.rate_vector(s.n)
    out = []
    for k, point in enumerate(s.points):
        rng = np.random.default_rng(seed + k)
        if spec.model == SY_DE:
            flip_all = rng.random() < rates[0]
            if flip_all:
                point = BinaryPoint(tuple(-v for v in point.features), point.label)
        else:
            draws = rng.random(s.n)
            if np.any(draws < rates):
                point = BinaryPoint(
                    tuple(-v if u < p else v for v, u, p in zip(point.features, draws, rates)),
                    point.label,
                )
        out.append(point)
    return SampleDataset(tuple(out), s.n, s.provenance)
