import numpy as np
import pytest

from holohide import (
    ComplexField,
    ParameterError,
    as_image,
    field_from_image,
    intensity,
)

from conftest import PITCH, WAVELENGTH


class TestFieldFromImage:
    def test_zeros(self):
        f = field_from_image(np.zeros((4, 4)), PITCH, WAVELENGTH)
        assert np.array_equal(f.values, np.zeros((4, 4), dtype=complex))
        assert f.pitch == PITCH and f.wavelength == WAVELENGTH

    def test_ones(self):
        f = field_from_image(np.ones((4, 4)), PITCH, WAVELENGTH)
        assert np.array_equal(f.values, np.ones((4, 4), dtype=complex))

    def test_single_pixel(self):
        img = np.zeros((4, 4))
        img[1, 2] = 0.5
        f = field_from_image(img, PITCH, WAVELENGTH)
        assert f.values[1, 2] == 0.5 + 0j
        assert np.count_nonzero(f.values) == 1

    @pytest.mark.parametrize("pitch,wavelength", [(0.0, WAVELENGTH), (-1e-6, WAVELENGTH), (PITCH, 0.0), (PITCH, -1.0)])
    def test_nonpositive_metadata_rejected(self, pitch, wavelength):
        with pytest.raises(ParameterError):
            field_from_image(np.ones((4, 4)), pitch, wavelength)


class TestIntensity:
    def test_unit_amplitude(self):
        f = ComplexField(np.full((3, 3), 1.0 + 0j), PITCH, WAVELENGTH)
        assert np.allclose(intensity(f), 1.0, atol=0)

    def test_pure_imaginary(self):
        f = ComplexField(np.full((3, 3), 2j), PITCH, WAVELENGTH)
        assert np.allclose(intensity(f), 4.0, atol=0)

    def test_unit_modulus(self):
        f = ComplexField(np.full((3, 3), (3 + 4j) / 5), PITCH, WAVELENGTH)
        assert np.abs(intensity(f) - 1.0).max() < 1e-15

    def test_squares_image(self, rng):
        img = rng.random((16, 16))
        f = field_from_image(img, PITCH, WAVELENGTH)
        assert np.abs(intensity(f) - img**2).max() < 1e-12

    def test_global_phase_invariance(self, rng):
        vals = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        f = ComplexField(vals, PITCH, WAVELENGTH)
        for theta in (0.3, -1.2, np.pi, 17.0):
            g = f.with_values(np.exp(1j * theta) * f.values)
            assert np.abs(intensity(g) - intensity(f)).max() < 1e-12


class TestInvariants:
    def test_min_size(self):
        with pytest.raises(ParameterError):
            ComplexField(np.ones((1, 5), dtype=complex), PITCH, WAVELENGTH)

    def test_nonfinite_rejected(self):
        bad = np.ones((4, 4), dtype=complex)
        bad[0, 0] = np.nan
        with pytest.raises(ParameterError):
            ComplexField(bad, PITCH, WAVELENGTH)
        bad[0, 0] = np.inf * 1j
        with pytest.raises(ParameterError):
            ComplexField(bad, PITCH, WAVELENGTH)

    def test_values_frozen(self):
        f = ComplexField(np.ones((4, 4), dtype=complex), PITCH, WAVELENGTH)
        with pytest.raises(ValueError):
            f.values[0, 0] = 3.0

    def test_input_array_not_aliased(self):
        src = np.ones((4, 4), dtype=complex)
        f = ComplexField(src, PITCH, WAVELENGTH)
        src[0, 0] = 99.0
        assert f.values[0, 0] == 1.0

    def test_same_grid(self):
        a = ComplexField(np.ones((4, 4), dtype=complex), PITCH, WAVELENGTH)
        b = ComplexField(np.ones((4, 4), dtype=complex), PITCH, WAVELENGTH)
        c = ComplexField(np.ones((4, 4), dtype=complex), PITCH * 2, WAVELENGTH)
        assert a.same_grid(b) and not a.same_grid(c)


class TestAsImage:
    def test_accepts_valid(self):
        out = as_image([[0.0, 0.5], [1.0, 0.25]])
        assert out.dtype == np.float64

    @pytest.mark.parametrize("bad", [[[0.0, 1.1]], [[-0.1, 0.0]], [[np.nan, 0.0]]])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ParameterError):
            as_image(np.array(bad))

    def test_rejects_wrong_rank(self):
        with pytest.raises(ParameterError):
            as_image(np.zeros((2, 2, 2)))
