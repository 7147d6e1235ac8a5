import numpy as np
import pytest

from holohide import (
    MetricReport,
    ParameterError,
    UndefinedMetricError,
    correlation_coefficient,
    mse,
    report,
)

from reference import pearson_direct


class TestCorrelationCoefficient:
    def test_self_correlation(self, rng):
        f = rng.random((8, 8))
        assert correlation_coefficient(f, f) == pytest.approx(1.0, abs=1e-14)

    def test_positive_affine(self, rng):
        f = rng.random((8, 8))
        assert correlation_coefficient(f, 2 * f + 3) == pytest.approx(1.0, abs=1e-12)

    def test_anticorrelation(self, rng):
        f = rng.random((8, 8))
        assert correlation_coefficient(f, -f) == pytest.approx(-1.0, abs=1e-12)

    def test_hand_computed_case(self):
        # mean 1.5 each; cov = 1; sigma^2 = 1.25 each -> 1/1.25 = 0.8
        f = np.array([[0.0, 1.0], [2.0, 3.0]])
        f0 = np.array([[1.0, 0.0], [2.0, 3.0]])
        assert correlation_coefficient(f, f0) == pytest.approx(0.8, abs=1e-12)

    def test_matches_direct_definition(self, rng):
        for _ in range(20):
            a = rng.random((6, 7))
            b = rng.random((6, 7))
            assert correlation_coefficient(a, b) == pytest.approx(
                pearson_direct(a, b), abs=1e-12
            )

    def test_bounds_and_symmetry(self, rng):
        for _ in range(50):
            a = rng.standard_normal((5, 5))
            b = rng.standard_normal((5, 5))
            c = correlation_coefficient(a, b)
            assert -1.0 <= c <= 1.0
            assert c == pytest.approx(correlation_coefficient(b, a), abs=1e-14)

    def test_affine_invariance_random(self, rng):
        f = rng.random((9, 9))
        g = rng.random((9, 9))
        base = correlation_coefficient(f, g)
        for _ in range(20):
            a = rng.uniform(0.1, 5.0)
            b = rng.uniform(-3.0, 3.0)
            assert correlation_coefficient(a * f + b, g) == pytest.approx(base, abs=1e-10)

    def test_negative_scale_flips_sign(self, rng):
        f = rng.random((8, 8))
        for a in (-0.5, -2.0, -10.0):
            assert correlation_coefficient(f, a * f + 1.0) == pytest.approx(-1.0, abs=1e-12)

    def test_constant_input_raises(self):
        f = np.ones((4, 4))
        g = np.arange(16.0).reshape(4, 4)
        with pytest.raises(UndefinedMetricError):
            correlation_coefficient(f, g)
        with pytest.raises(UndefinedMetricError):
            correlation_coefficient(g, f)

    def test_shape_mismatch(self):
        with pytest.raises(ParameterError):
            correlation_coefficient(np.zeros((2, 2)), np.zeros((3, 3)))

    def test_too_few_pixels(self):
        with pytest.raises(ParameterError):
            correlation_coefficient(np.array([1.0]), np.array([2.0]))

    def test_nonfinite_rejected(self):
        a = np.array([[1.0, np.nan], [0.0, 2.0]])
        with pytest.raises(ParameterError):
            correlation_coefficient(a, a)


class TestMse:
    def test_identical(self, rng):
        f = rng.random((5, 5))
        assert mse(f, f) == 0.0

    def test_zeros_vs_ones(self):
        assert mse(np.zeros((4, 4)), np.ones((4, 4))) == 1.0

    def test_half_swap(self):
        assert mse(np.array([0.0, 0.5]), np.array([0.5, 0.0])) == pytest.approx(0.25)

    def test_shape_mismatch(self):
        with pytest.raises(ParameterError):
            mse(np.zeros((2, 3)), np.zeros((3, 2)))


class TestReport:
    def test_bundles(self, rng):
        a = rng.random((6, 6))
        b = rng.random((6, 6))
        rep = report(a, b)
        assert isinstance(rep, MetricReport)
        assert rep.cc == correlation_coefficient(a, b)
        assert rep.mse == mse(a, b)
        assert rep.n_pixels == 36
