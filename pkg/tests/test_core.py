import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import attrnoise as an
from attrnoise.core import WEIGHT_TOLERANCE, BinaryPoint, DimensionMismatchError


def atom_strategy(n):
    return st.tuples(
        st.tuples(*[st.sampled_from((-1, 1)) for _ in range(n)]),
        st.sampled_from((-1, 1)),
        st.floats(min_value=1e-6, max_value=10.0, allow_nan=False),
    )


def population_strategy(max_n=4):
    return st.integers(min_value=1, max_value=max_n).flatmap(
        lambda n: st.lists(atom_strategy(n), min_size=1, max_size=10)
    )


class TestBinaryPoint:
    def test_valid(self):
        p = BinaryPoint((1, -1, 1), -1)
        assert p.features == (1, -1, 1)
        assert p.label == -1

    @pytest.mark.parametrize("features", [(0, 1), (2, -1), (1.5, 1)])
    def test_rejects_non_sign_features(self, features):
        with pytest.raises(ValueError):
            BinaryPoint(features, 1)

    def test_rejects_bad_label(self):
        with pytest.raises(ValueError):
            BinaryPoint((1, 1), 0)

    def test_flipped(self):
        p = BinaryPoint((1, -1, 1), 1)
        q = p.flipped((True, False, True))
        assert q.features == (-1, -1, -1)
        assert q.label == 1
        assert p.flipped((False, False, False)) == p


class TestPopulationDistribution:
    def test_weight_sum_enforced(self):
        with pytest.raises(ValueError):
            an.PopulationDistribution(((BinaryPoint((1,), 1), 0.5),), 1)

    def test_negative_weight_rejected(self):
        atoms = ((BinaryPoint((1,), 1), -0.5), (BinaryPoint((-1,), 1), 1.5))
        with pytest.raises(ValueError):
            an.PopulationDistribution(atoms, 1)

    def test_dimension_mismatch(self):
        atoms = ((BinaryPoint((1, 1), 1), 1.0),)
        with pytest.raises(DimensionMismatchError):
            an.PopulationDistribution(atoms, 1)

    def test_arrays(self, three_atom_2d):
        X = three_atom_2d.feature_matrix()
        y = three_atom_2d.labels()
        w = three_atom_2d.weights()
        assert X.shape == (3, 2)
        assert set(np.unique(X)) <= {-1.0, 1.0}
        assert set(np.unique(y)) <= {-1.0, 1.0}
        assert math.isclose(w.sum(), 1.0, abs_tol=WEIGHT_TOLERANCE)


class TestMakePopulation:
    def test_merges_duplicates(self):
        d = an.make_population([((1,), 1, 0.25), ((1,), 1, 0.25), ((-1,), -1, 0.5)])
        assert d.num_atoms == 2
        weights = dict(((a.features, a.label), w) for a, w in d.atoms)
        assert weights[((1,), 1)] == 0.5

    def test_drops_zero_weights(self):
        d = an.make_population([((1,), 1, 1.0), ((-1,), -1, 0.0)])
        assert d.num_atoms == 1

    def test_normalizes(self):
        d = an.make_population([((1,), 1, 2.0), ((-1,), -1, 6.0)])
        weights = dict(((a.features, a.label), w) for a, w in d.atoms)
        assert math.isclose(weights[((1,), 1)], 0.25, abs_tol=1e-15)

    def test_canonical_order(self):
        d1 = an.make_population([((1,), 1, 0.5), ((-1,), -1, 0.5)])
        d2 = an.make_population([((-1,), -1, 0.5), ((1,), 1, 0.5)])
        assert d1.atoms == d2.atoms

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            an.make_population([])
        with pytest.raises(ValueError):
            an.make_population([((1,), 1, 0.0)])

    @given(population_strategy())
    @settings(max_examples=60, deadline=None)
    def test_idempotent(self, atoms):
        d1 = an.make_population(atoms)
        d2 = an.make_population([(a.features, a.label, w) for a, w in d1.atoms])
        # rebuilding from an already-canonical population is bitwise stable
        assert d1.atoms == d2.atoms

    @given(population_strategy())
    @settings(max_examples=60, deadline=None)
    def test_weights_sum_to_one(self, atoms):
        d = an.make_population(atoms)
        assert abs(math.fsum(w for _, w in d.atoms) - 1.0) <= WEIGHT_TOLERANCE


class TestSampleDataset:
    def test_from_arrays_roundtrip(self, synthetic_sample):
        X = synthetic_sample.feature_matrix()
        y = synthetic_sample.labels()
        again = an.SampleDataset.from_arrays(X, y, provenance="x")
        assert again.points == synthetic_sample.points

    def test_rejects_non_binary(self):
        with pytest.raises(ValueError):
            an.SampleDataset.from_arrays(np.array([[0, 1]]), np.array([1]))

    def test_to_population_weights(self):
        s = an.SampleDataset.from_arrays(
            np.array([[1], [1], [-1], [1]]), np.array([1, 1, -1, 1])
        )
        d = s.to_population()
        weights = dict(((a.features, a.label), w) for a, w in d.atoms)
        assert weights[((1,), 1)] == 0.75
        assert weights[((-1,), -1)] == 0.25


class TestNoiseSpec:
    def test_syde(self):
        spec = an.NoiseSpec.syde(0.3)
        assert spec.model == "syde"
        assert spec.p == 0.3
        assert tuple(spec.rate_vector(4)) == (0.3, 0.3, 0.3, 0.3)

    def test_asyin(self):
        spec = an.NoiseSpec.asyin((0.1, 0.2))
        assert spec.model == "asyin"
        assert tuple(spec.rate_vector(2)) == (0.1, 0.2)
        spec.require_dimension(2)
        with pytest.raises(DimensionMismatchError):
            spec.require_dimension(3)

    @pytest.mark.parametrize("p", [-0.1, 1.1, float("nan")])
    def test_rate_bounds(self, p):
        with pytest.raises(ValueError):
            an.NoiseSpec.syde(p)

    def test_p_restricted_to_syde(self):
        assert an.NoiseSpec.syde(0.2).p == 0.2
        with pytest.raises(ValueError):
            an.NoiseSpec.asyin((0.2, 0.2)).p


class TestLinearClassifier:
    def test_predict_zero_decision_is_negative(self):
        f = an.LinearClassifier.affine((1.0, 1.0), 0.0)
        assert f.decision_value((1, -1)) == 0.0
        assert f.predict((1, -1)) == -1

    def test_decision_values_matches_scalar(self, rng):
        # the two paths accumulate in different (but each fixed) orders,
        # so agreement is up to rounding, not bitwise
        f = an.LinearClassifier.affine((0.3, -0.7, 0.1), 0.25)
        X = rng.integers(0, 2, size=(20, 3)) * 2 - 1
        vec = f.decision_values(X)
        for row, value in zip(X, vec):
            scalar = f.decision_value(tuple(int(v) for v in row))
            assert math.isclose(value, scalar, rel_tol=0.0, abs_tol=1e-12)

    def test_origin_passing_flag(self):
        assert an.LinearClassifier((1.0, 2.0)).origin_passing
        assert not an.LinearClassifier.affine((1.0, 2.0), 0.5).origin_passing

    def test_scaled(self):
        f = an.LinearClassifier((1.0, -2.0))
        g = f.scaled(0.5)
        assert g.weights == (0.5, -1.0)


class TestRiskReport:
    def test_consistency_enforced(self):
        f = an.LinearClassifier((1.0,))
        an.RiskReport(0.25, 0.25, True, f, f)
        an.RiskReport(0.0, 0.25, False, f, f)
        with pytest.raises(ValueError):
            an.RiskReport(0.0, 0.25, True, f, f)
        with pytest.raises(ValueError):
            an.RiskReport(0.25, 0.25, False, f, f)
