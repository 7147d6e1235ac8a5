"""Interferogram synthesis: embedding an object image in the diffraction
field of a host image.

The object image modulates one beam, the host image the other; both are
Fresnel-propagated to the sensor plane and superposed, and the recorded
intensity I = |psi_o + psi_h|^2 is the transmitted ciphertext. Beam
attenuations set how strongly the object arm perturbs the host's
diffraction pattern; a phase shift on the host arm supports multi-frame
phase-shifting acquisition. A simple sensor model (additive Gaussian noise
plus optional quantization) stands in for the camera.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field, replace
from typing import Mapping

import numpy as np

from .errors import ParameterError
from .field import ComplexField, as_image, field_from_image, intensity
from .propagation import (
    DEFAULT_DISTANCE,
    FRESNEL_TRANSFER_FUNCTION,
    PropagationSpec,
    propagate,
)

__all__ = [
    "SensorModel",
    "HidingParams",
    "Interferogram",
    "embed_on_slm",
    "object_field",
    "host_field",
    "synthesize",
    "synthesize_psi_stack",
]

DEFAULT_WAVELENGTH = 633e-9  # He-Ne line
DEFAULT_PITCH = 7.4e-6  # camera pixel pitch, meters


@dataclass(frozen=True)
class SensorModel:
    """Camera model: Gaussian read noise and quantization.

    ``gaussian_noise_sigma`` is a fraction of full scale (the noise-free
    intensity maximum of the frame). ``bit_depth`` 0 disables quantization;
    8 and 16 quantize over [0, full scale]. ``seed`` makes noise draws
    reproducible.
    """

    gaussian_noise_sigma: float = 0.01
    bit_depth: int = 8
    seed: int = 0

    def __post_init__(self):
        if not (np.isfinite(self.gaussian_noise_sigma) and self.gaussian_noise_sigma >= 0):
            raise ParameterError(f"noise sigma must be >= 0, got {self.gaussian_noise_sigma}")
        if self.bit_depth not in (0, 8, 16):
            raise ParameterError(f"bit_depth must be 0, 8 or 16, got {self.bit_depth}")

    @property
    def ideal(self) -> bool:
        return self.gaussian_noise_sigma == 0.0 and self.bit_depth == 0

    @staticmethod
    def off() -> "SensorModel":
        """Noise-free, unquantized sensor."""
        return SensorModel(gaussian_noise_sigma=0.0, bit_depth=0, seed=0)


@dataclass(frozen=True)
class HidingParams:
    """Physical configuration of one hiding setup.

    Attenuations are amplitude factors in (0, 1] applied to each arm (the
    neutral-density-filter knobs that set the beam ratio); the defaults hide
    the object under a 5:1 host:object amplitude ratio. ``phase_shift`` is
    applied to the host (reference) arm.
    """

    wavelength: float = DEFAULT_WAVELENGTH
    pitch: float = DEFAULT_PITCH
    object_distance: float = DEFAULT_DISTANCE
    host_distance: float = DEFAULT_DISTANCE
    object_attenuation: float = 0.2
    host_attenuation: float = 1.0
    phase_shift: float = 0.0
    sensor: SensorModel = dc_field(default_factory=SensorModel)
    method: str = FRESNEL_TRANSFER_FUNCTION

    def __post_init__(self):
        if not (np.isfinite(self.wavelength) and self.wavelength > 0):
            raise ParameterError(f"wavelength must be positive, got {self.wavelength}")
        if not (np.isfinite(self.pitch) and self.pitch > 0):
            raise ParameterError(f"pitch must be positive, got {self.pitch}")
        for name in ("object_distance", "host_distance", "phase_shift"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise ParameterError(f"{name} must be finite, got {v}")
        for name in ("object_attenuation", "host_attenuation"):
            v = getattr(self, name)
            if not (np.isfinite(v) and 0.0 < v <= 1.0):
                raise ParameterError(f"{name} must lie in (0, 1], got {v}")
        # Delegate method validation.
        PropagationSpec(0.0, self.method)


@dataclass(frozen=True)
class Interferogram:
    """Recorded intensity frame plus the parameters that produced it."""

    values: np.ndarray
    params: HidingParams
    provenance: Mapping[str, str] | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=np.float64, copy=True)
        if vals.ndim != 2:
            raise ParameterError(f"interferogram must be 2D, got shape {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ParameterError("interferogram contains NaN or Inf")
        if vals.min() < 0.0:
            raise ParameterError("interferogram values must be >= 0")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape


def embed_on_slm(src, canvas: int, scale: int) -> np.ndarray:
    """Upsample a square source image and center it on a dark canvas.

    Nearest-neighbor with the floor index rule: target pixel t maps to
    source pixel floor(t * n / scale). Models loading a small pattern on a
    modulator that fills only part of the illuminated aperture.
    """
    arr = as_image(src)
    if arr.shape[0] != arr.shape[1]:
        raise ParameterError(f"source must be square, got {arr.shape}")
    canvas = int(canvas)
    scale = int(scale)
    if scale < 1 or canvas < 1:
        raise ParameterError("canvas and scale must be positive")
    if scale > canvas:
        raise ParameterError(f"scale {scale} exceeds canvas {canvas}")
    n = arr.shape[0]
    idx = (np.arange(scale) * n) // scale
    up = arr[np.ix_(idx, idx)]
    out = np.zeros((canvas, canvas))
    off = (canvas - scale) // 2
    out[off : off + scale, off : off + scale] = up
    return out


def object_field(object_img, p: HidingParams) -> ComplexField:
    """Object arm at the sensor plane: attenuated, propagated transmissivity."""
    f = field_from_image(object_img, p.pitch, p.wavelength)
    f = propagate(f, PropagationSpec(p.object_distance, p.method))
    return f.with_values(p.object_attenuation * f.values)


def host_field(host_img, p: HidingParams, phase_shift: float | None = None) -> ComplexField:
    """Host (reference) arm at the sensor plane, with its phase shift applied."""
    delta = p.phase_shift if phase_shift is None else phase_shift
    if not np.isfinite(delta):
        raise ParameterError(f"phase shift must be finite, got {delta}")
    f = field_from_image(host_img, p.pitch, p.wavelength)
    f = propagate(f, PropagationSpec(p.host_distance, p.method))
    return f.with_values(p.host_attenuation * np.exp(1j * delta) * f.values)


def _apply_sensor(ideal: np.ndarray, sensor: SensorModel, seed=None) -> np.ndarray:
    """Add noise, clip at zero, quantize over [0, noise-free max]."""
    full_scale = float(ideal.max())
    out = ideal
    if sensor.gaussian_noise_sigma > 0.0:
        rng = np.random.default_rng(sensor.seed if seed is None else seed)
        out = out + rng.normal(0.0, sensor.gaussian_noise_sigma * full_scale, out.shape)
        out = np.clip(out, 0.0, None)
    if sensor.bit_depth != 0 and full_scale > 0.0:
        levels = 2**sensor.bit_depth - 1
        out = np.round(np.clip(out / full_scale, 0.0, 1.0) * levels) / levels * full_scale
    return out


def synthesize(
    object_img,
    host_img,
    p: HidingParams,
    *,
    provenance: Mapping[str, str] | None = None,
    seed=None,
) -> Interferogram:
    """Record one hidden interferogram |psi_o + psi_h|^2 through the sensor.

    ``seed`` overrides the sensor's noise seed (used by dataset generation
    to give every sample an independent reproducible draw).
    """
    obj = as_image(object_img)
    host = as_image(host_img)
    if obj.shape != host.shape:
        raise ParameterError(f"object {obj.shape} and host {host.shape} shapes differ")
    psi_o = object_field(obj, p)
    psi_h = host_field(host, p)
    ideal = intensity(psi_o.with_values(psi_o.values + psi_h.values))
    values = _apply_sensor(ideal, p.sensor, seed)
    return Interferogram(values, p, provenance)


def synthesize_psi_stack(
    object_img,
    host_img,
    p: HidingParams,
    shifts,
    deviations=None,
    *,
    seed=None,
) -> list[Interferogram]:
    """Multi-frame phase-shifting acquisition.

    Frame k is synthesized with host phase shift ``shifts[k] +
    deviations[k]`` (deviations model an imperfect phase shifter; zeros give
    the ideal stack). Noise draws are independent per frame, derived from
    the sensor seed so a stack is reproducible as a whole.
    """
    shifts = [float(s) for s in np.atleast_1d(shifts)]
    if len(shifts) == 0:
        raise ParameterError("shifts must be nonempty")
    if deviations is None:
        deviations = [0.0] * len(shifts)
    deviations = [float(d) for d in np.atleast_1d(deviations)]
    if len(deviations) != len(shifts):
        raise ParameterError(
            f"{len(deviations)} deviations for {len(shifts)} shifts"
        )
    base = p.sensor.seed if seed is None else seed
    stack = []
    for k, (s, dv) in enumerate(zip(shifts, deviations)):
        frame_params = replace(p, phase_shift=s + dv)
        frame_seed = np.random.SeedSequence([int(base), k]).generate_state(1)[0]
        stack.append(
            synthesize(object_img, host_img, frame_params, seed=int(frame_seed))
        )
    return stack
