import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import attrnoise as an
from attrnoise.risk import evaluate_sample, robustness_check, squared_risk, zero_one_risk
from conftest import random_binary_population
from test_core import population_strategy


class TestZeroOneRisk:
    def test_hand_values(self, two_atom_1d):
        # sign(-x) classifies both atoms correctly; sign(x) misses both
        assert zero_one_risk(two_atom_1d, an.LinearClassifier((-1.0,))) == 0.0
        assert zero_one_risk(two_atom_1d, an.LinearClassifier((1.0,))) == 1.0

    def test_zero_decision_counts_as_error_for_both_labels(self):
        d = an.make_population([((1, -1), 1, 0.5), ((-1, 1), -1, 0.5)])
        f = an.LinearClassifier((1.0, 1.0))  # decision value 0 on both atoms
        assert zero_one_risk(d, f) == 1.0

    def test_scale_invariance_of_strict_side(self, rng):
        for _ in range(20):
            d = random_binary_population(rng, 3)
            w = tuple(rng.normal(size=3))
            c = float(rng.normal())
            f = an.LinearClassifier.affine(w, c)
            g = f.scaled(7.5)
            assert zero_one_risk(d, f) == zero_one_risk(d, g)

    def test_dimension_mismatch(self, three_atom_2d):
        with pytest.raises(an.DimensionMismatchError):
            zero_one_risk(three_atom_2d, an.LinearClassifier((1.0, 1.0, 1.0)))


class TestSquaredRisk:
    def test_hand_value(self):
        d = an.make_population([((1,), 1, 1.0)])
        f = an.LinearClassifier((0.25,))
        assert math.isclose(squared_risk(d, f), 0.75 ** 2, abs_tol=1e-15)

    def test_closed_form_fit_minimizes(self, rng):
        for _ in range(10):
            d = random_binary_population(rng, 2)
            try:
                f = an.fit_squared_population(d)
            except an.SingularMatrixError:
                continue
            base = squared_risk(d, f)
            for _ in range(10):
                other = an.LinearClassifier(tuple(np.asarray(f.weights) + rng.normal(scale=0.1, size=2)))
                assert squared_risk(d, other) >= base - 1e-9


class TestEvaluateSample:
    def test_counts(self):
        X = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]])
        y = np.array([1, 1, -1, -1])
        s = an.SampleDataset.from_arrays(X, y)
        f = an.LinearClassifier((1.0, 0.0))
        m = evaluate_sample(s, f)
        assert (m.tp, m.tn, m.fp, m.fn) == (2, 2, 0, 0)
        assert m.accuracy == 1.0
        assert m.am == 1.0

    def test_zero_decision_is_an_error_here_too(self):
        X = np.array([[1, -1], [-1, 1]])
        y = np.array([1, -1])
        s = an.SampleDataset.from_arrays(X, y)
        f = an.LinearClassifier((1.0, 1.0))
        m = evaluate_sample(s, f)
        assert m.accuracy == 0.0
        assert (m.fp, m.fn) == (1, 1)

    def test_accuracy_equals_one_minus_population_risk(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 4))
            X = rng.integers(0, 2, size=(30, n)) * 2 - 1
            y = rng.integers(0, 2, size=30) * 2 - 1
            s = an.SampleDataset.from_arrays(X, y)
            f = an.LinearClassifier.affine(tuple(rng.normal(size=n)), float(rng.normal()))
            m = evaluate_sample(s, f)
            assert math.isclose(m.accuracy, 1.0 - zero_one_risk(s.to_population(), f),
                                abs_tol=1e-12)

    def test_am_is_mean_of_rates(self):
        X = np.array([[1], [1], [1], [-1]])
        y = np.array([1, 1, -1, -1])
        s = an.SampleDataset.from_arrays(X, y)
        f = an.LinearClassifier((1.0,))
        m = evaluate_sample(s, f)
        # tpr = 1, tnr = 0.5
        assert math.isclose(m.am, 0.75, abs_tol=1e-15)

    def test_single_class_flag(self):
        X = np.array([[1], [-1]])
        y = np.array([1, 1])
        s = an.SampleDataset.from_arrays(X, y)
        m = evaluate_sample(s, an.LinearClassifier((1.0,)))
        assert m.single_class
        assert m.am == 0.5  # recall of the only class present


class TestRobustnessCheck:
    def test_robust_case(self, three_atom_2d):
        f = an.LinearClassifier((1.0, 1.0))
        report = robustness_check(three_atom_2d, an.NoiseSpec.syde(0.1), f, f)
        assert report.robust
        assert report.clean_risk_of_clean_opt == report.clean_risk_of_noisy_opt

    def test_non_robust_case(self, two_atom_1d):
        report = robustness_check(
            two_atom_1d, an.NoiseSpec.syde(0.4),
            an.LinearClassifier.affine((-1.0, ), -0.1),
            an.LinearClassifier.affine((1.0, ), -2.0),
        )
        assert not report.robust
        assert report.clean_risk_of_clean_opt == 0.0
        assert report.clean_risk_of_noisy_opt == 0.25

    def test_dimension_validation(self, three_atom_2d):
        with pytest.raises(an.DimensionMismatchError):
            robustness_check(three_atom_2d, an.NoiseSpec.asyin((0.1,)),
                             an.LinearClassifier((1.0, 1.0)),
                             an.LinearClassifier((1.0, 1.0)))


@given(population_strategy(max_n=3))
@settings(max_examples=40, deadline=None)
def test_risk_bounds(atoms):
    d = an.make_population(atoms)
    f = an.LinearClassifier.affine((0.5,) * d.n, 0.25)
    r = zero_one_risk(d, f)
    assert 0.0 <= r <= 1.0
    assert squared_risk(d, f) >= 0.0
