"""Sampled complex optical fields and conversions to/from real images.

A field is a 2D complex amplitude on a uniform square-pixel grid; it carries
its own pixel pitch and wavelength so that propagation and interference need
no ambient state. Real images live in [0, 1] and are represented as plain
numpy arrays, validated at API boundaries by :func:`as_image`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ParameterError

__all__ = ["ComplexField", "as_image", "field_from_image", "intensity"]


def as_image(img) -> np.ndarray:
    """Validate and return a 2D real image with values in [0, 1].

    Accepts anything array-like; returns a float64 array. Raises
    :class:`ParameterError` for wrong rank, non-finite values, or values
    outside [0, 1].
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ParameterError(f"image must be 2D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ParameterError(f"image must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParameterError("image contains NaN or Inf")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ParameterError(
            f"image values must lie in [0, 1], got range "
            f"[{arr.min():g}, {arr.max():g}]"
        )
    return arr


@dataclass(frozen=True, eq=False)
class ComplexField:
    """2D complex wavefront sampled on a uniform grid.

    Parameters
    ----------
    values : ndarray
        2D complex amplitudes (dimensionless). Copied and frozen.
    pitch : float
        Pixel pitch in meters/pixel (> 0, square pixels).
    wavelength : float
        Vacuum wavelength in meters (> 0).
    band_limit : float or None
        Spatial-frequency cutoff in cycles/m recorded when an anti-aliasing
        mask was applied by a propagation kernel; None means unmasked.
    """

    values: np.ndarray
    pitch: float
    wavelength: float
    band_limit: float | None = dc_field(default=None)

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.complex128, copy=True)
        if vals.ndim != 2:
            raise ParameterError(f"field values must be 2D, got shape {vals.shape}")
        if vals.shape[0] < 2 or vals.shape[1] < 2:
            raise ParameterError(f"field must be at least 2x2, got {vals.shape}")
        if not np.all(np.isfinite(vals.real)) or not np.all(np.isfinite(vals.imag)):
            raise ParameterError("field values contain NaN or Inf")
        if not (np.isfinite(self.pitch) and self.pitch > 0):
            raise ParameterError(f"pitch must be positive, got {self.pitch}")
        if not (np.isfinite(self.wavelength) and self.wavelength > 0):
            raise ParameterError(f"wavelength must be positive, got {self.wavelength}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def wavenumber(self) -> float:
        """2*pi/wavelength in rad/m."""
        return 2.0 * np.pi / self.wavelength

    def with_values(self, values) -> "ComplexField":
        """New field with the same grid metadata but different values."""
        return ComplexField(values, self.pitch, self.wavelength, self.band_limit)

    def same_grid(self, other: "ComplexField") -> bool:
        """True when shapes, pitch and wavelength all match."""
        return (
            self.shape == other.shape
            and self.pitch == other.pitch
            and self.wavelength == other.wavelength
        )


def field_from_image(img, pitch: float, wavelength: float) -> ComplexField:
    """Lift a real image to a field by amplitude modulation with zero phase.

    The image value at each pixel becomes the real part of the complex
    amplitude (transmissivity model of a spatial light modulator).
    """
    arr = as_image(img)
    return ComplexField(arr.astype(np.complex128), pitch, wavelength)


def intensity(f: ComplexField) -> np.ndarray:
    """Squared modulus |values|^2 of a field.

    Returns a nonnegative real array; values are not clamped to [0, 1]
    (interference can exceed the single-beam intensity).
    """
    out = np.abs(f.values) ** 2
    return out
