"""Shared fixtures: small deterministic populations and synthetic data files."""
import numpy as np
import pytest

import attrnoise as an


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def two_atom_1d():
    # the 1-D pair whose clean optimum has risk 0
    return an.make_population([
        ((-1,), 1, 0.25),
        ((1,), -1, 0.75),
    ])


@pytest.fixture
def three_atom_2d():
    return an.make_population([
        ((-1, 1), 1, 0.25),
        ((-1, -1), -1, 0.5),
        ((1, -1), 1, 0.25),
    ])


def random_binary_population(rng, n, max_atoms=12):
    k = int(rng.integers(1, max_atoms + 1))
    atoms = []
    for _ in range(k):
        features = tuple(int(v) * 2 - 1 for v in rng.integers(0, 2, n))
        label = int(rng.integers(0, 2)) * 2 - 1
        atoms.append((features, label, float(rng.random()) + 1e-3))
    return an.make_population(atoms)


@pytest.fixture
def synthetic_sample(rng):
    X = rng.integers(0, 2, size=(60, 5)) * 2 - 1
    y = np.where(X[:, 0] + 0.5 * X[:, 1] - 0.25 * X[:, 2] >= 0, 1, -1)
    return an.SampleDataset.from_arrays(X, y, provenance="synthetic")
