import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import attrnoise as an
from attrnoise.noise import MAX_EXACT_DIMENSION, corrupt_population, corrupt_sample, flip_patterns
from conftest import random_binary_population


class TestFlipPatterns:
    def test_syde_two_patterns(self):
        patterns = flip_patterns(an.NoiseSpec.syde(0.3), 4)
        assert len(patterns) == 2
        by_mask = {p.mask: p.weight for p in patterns}
        assert by_mask[(False,) * 4] == 0.7
        assert by_mask[(True,) * 4] == 0.3

    def test_asyin_enumerates_all(self):
        patterns = flip_patterns(an.NoiseSpec.asyin((0.1, 0.2, 0.3)), 3)
        assert len(patterns) == 8
        by_mask = {p.mask: p.weight for p in patterns}
        assert math.isclose(by_mask[(True, False, True)], 0.1 * 0.8 * 0.3, abs_tol=1e-15)

    @given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=1, max_size=6))
    @settings(max_examples=50, deadline=None)
    def test_asyin_weights_sum_to_one(self, rates):
        patterns = flip_patterns(an.NoiseSpec.asyin(tuple(rates)), len(rates))
        assert abs(math.fsum(p.weight for p in patterns) - 1.0) <= 1e-12

    def test_dimension_cap(self):
        n = MAX_EXACT_DIMENSION + 1
        with pytest.raises(ValueError):
            flip_patterns(an.NoiseSpec.asyin((0.1,) * n), n)


class TestCorruptPopulation:
    def test_syde_zero_is_identity(self, three_atom_2d):
        out = corrupt_population(three_atom_2d, an.NoiseSpec.syde(0.0))
        assert out.atoms == three_atom_2d.atoms

    def test_syde_mixes_two_images(self):
        d = an.make_population([((1, -1), 1, 1.0)])
        out = corrupt_population(d, an.NoiseSpec.syde(0.25))
        weights = dict(((a.features, a.label), w) for a, w in out.atoms)
        assert weights == {((1, -1), 1): 0.75, ((-1, 1), 1): 0.25}

    def test_asyin_single_atom_weights(self):
        d = an.make_population([((1, 1), -1, 1.0)])
        out = corrupt_population(d, an.NoiseSpec.asyin((0.1, 0.2)))
        weights = dict(((a.features, a.label), w) for a, w in out.atoms)
        assert math.isclose(weights[((1, 1), -1)], 0.9 * 0.8, abs_tol=1e-15)
        assert math.isclose(weights[((-1, 1), -1)], 0.1 * 0.8, abs_tol=1e-15)
        assert math.isclose(weights[((1, -1), -1)], 0.9 * 0.2, abs_tol=1e-15)
        assert math.isclose(weights[((-1, -1), -1)], 0.1 * 0.2, abs_tol=1e-15)

    def test_half_rate_erases_attribute_information(self):
        d = an.make_population([((1,), 1, 1.0)])
        out = corrupt_population(d, an.NoiseSpec.syde(0.5))
        weights = dict(((a.features, a.label), w) for a, w in out.atoms)
        assert weights[((1,), 1)] == 0.5
        assert weights[((-1,), 1)] == 0.5

    def test_label_marginal_preserved(self, rng):
        for _ in range(25):
            n = int(rng.integers(1, 5))
            d = random_binary_population(rng, n)
            spec = (
                an.NoiseSpec.syde(float(rng.uniform(0, 0.5)))
                if rng.random() < 0.5
                else an.NoiseSpec.asyin(tuple(rng.uniform(0, 0.5, n)))
            )
            out = corrupt_population(d, spec)
            for label in (-1, 1):
                before = math.fsum(w for a, w in d.atoms if a.label == label)
                after = math.fsum(w for a, w in out.atoms if a.label == label)
                assert abs(before - after) <= 1e-12

    def test_weights_still_sum_to_one(self, three_atom_2d):
        out = corrupt_population(three_atom_2d, an.NoiseSpec.asyin((0.12, 0.23)))
        assert abs(math.fsum(w for _, w in out.atoms) - 1.0) <= 1e-12

    def test_dimension_checked(self, three_atom_2d):
        with pytest.raises(an.DimensionMismatchError):
            corrupt_population(three_atom_2d, an.NoiseSpec.asyin((0.1, 0.2, 0.3)))


class TestCorruptSample:
    def test_deterministic(self, synthetic_sample):
        a = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.3), seed=42)
        b = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.3), seed=42)
        assert a.points == b.points
        c = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.3), seed=43)
        assert a.points != c.points

    def test_zero_rate_identity(self, synthetic_sample):
        out = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.0), seed=7)
        assert out.points == synthetic_sample.points

    def test_full_rate_flips_everything(self, synthetic_sample):
        out = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(1.0), seed=7)
        assert np.array_equal(out.feature_matrix(), -synthetic_sample.feature_matrix())
        assert np.array_equal(out.labels(), synthetic_sample.labels())

    def test_syde_flips_whole_rows(self, synthetic_sample):
        out = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.5), seed=11)
        X0 = synthetic_sample.feature_matrix()
        X1 = out.feature_matrix()
        for before, after in zip(X0, X1):
            assert np.array_equal(after, before) or np.array_equal(after, -before)

    def test_labels_never_change(self, synthetic_sample):
        out = corrupt_sample(synthetic_sample, an.NoiseSpec.asyin((0.4,) * 5), seed=11)
        assert np.array_equal(out.labels(), synthetic_sample.labels())

    def test_per_point_streams_are_prefix_stable(self, synthetic_sample):
        # extending the dataset must not disturb earlier points' draws
        head = an.SampleDataset(synthetic_sample.points[:20], synthetic_sample.n,
                                synthetic_sample.provenance)
        full = corrupt_sample(synthetic_sample, an.NoiseSpec.syde(0.5), seed=3)
        part = corrupt_sample(head, an.NoiseSpec.syde(0.5), seed=3)
        assert part.points == full.points[:20]

    def test_empirical_flip_rate(self, rng):
        X = rng.integers(0, 2, size=(4000, 3)) * 2 - 1
        y = np.ones(4000, dtype=int)
        s = an.SampleDataset.from_arrays(X, y)
        out = corrupt_sample(s, an.NoiseSpec.asyin((0.1, 0.5, 0.9)), seed=0)
        flipped = (out.feature_matrix() != s.feature_matrix()).mean(axis=0)
        assert np.allclose(flipped, [0.1, 0.5, 0.9], atol=0.03)
