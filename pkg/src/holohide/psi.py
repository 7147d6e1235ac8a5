"""Classical phase-shifting decryption of hidden interferograms.

Given a stack of interferograms recorded with known host-arm phase shifts
and the decryption key (the host image plus the diffraction parameters),
the object arm's complex field at the sensor plane is recovered by the
standard multi-step combination, then inverse-propagated to the modulator
plane to yield the hidden image.

Supported shift sets: 4-step {0, pi/2, pi, 3pi/2} and 3-step {0, pi/2, pi}.
The sign convention of the combinations is fixed by the forward model
implemented in :mod:`holohide.hiding` (the noise-free round trip must
return the object), not by any textbook convention table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .field import ComplexField, as_image, field_from_image
from .hiding import Interferogram
from .propagation import FRESNEL_TRANSFER_FUNCTION, PropagationSpec, propagate, invert

__all__ = [
    "DecryptionKey",
    "PsiResult",
    "FOUR_STEP_SHIFTS",
    "THREE_STEP_SHIFTS",
    "psi_recover_field",
    "decrypt",
]

FOUR_STEP_SHIFTS = (0.0, np.pi / 2, np.pi, 3 * np.pi / 2)
THREE_STEP_SHIFTS = (0.0, np.pi / 2, np.pi)

# Host-field pixels below this fraction of the host maximum are treated as
# singular and zeroed rather than divided by.
NEAR_ZERO_FRACTION = 1e-6


@dataclass(frozen=True)
class DecryptionKey:
    """Key material: host image and the diffraction parameters."""

    host_img: np.ndarray
    host_distance: float
    host_attenuation: float
    object_distance: float
    wavelength: float
    pitch: float
    method: str = FRESNEL_TRANSFER_FUNCTION

    def __post_init__(self):
        object.__setattr__(self, "host_img", as_image(self.host_img))
        if not (np.isfinite(self.wavelength) and self.wavelength > 0):
            raise ParameterError(f"wavelength must be positive, got {self.wavelength}")
        if not (np.isfinite(self.pitch) and self.pitch > 0):
            raise ParameterError(f"pitch must be positive, got {self.pitch}")
        if not (np.isfinite(self.host_attenuation) and 0 < self.host_attenuation <= 1):
            raise ParameterError(
                f"host_attenuation must lie in (0, 1], got {self.host_attenuation}"
            )
        for name in ("host_distance", "object_distance"):
            if not np.isfinite(getattr(self, name)):
                raise ParameterError(f"{name} must be finite")
        PropagationSpec(0.0, self.method)

    def host_field(self) -> ComplexField:
        """Rebuild the host arm at the sensor plane from the key."""
        f = field_from_image(self.host_img, self.pitch, self.wavelength)
        f = propagate(f, PropagationSpec(self.host_distance, self.method))
        return f.with_values(self.host_attenuation * f.values)


@dataclass(frozen=True)
class PsiResult:
    """Recovered sensor-plane field plus singularity diagnostics."""

    field: ComplexField
    zeroed_pixels: int


def _stack_values(stack) -> list[np.ndarray]:
    frames = []
    shape = None
    for item in stack:
        vals = item.values if isinstance(item, Interferogram) else np.asarray(item, dtype=np.float64)
        if vals.ndim != 2:
            raise ParameterError("stack frames must be 2D intensity arrays")
        if shape is None:
            shape = vals.shape
        elif vals.shape != shape:
            raise ParameterError(f"stack frame shapes differ: {vals.shape} vs {shape}")
        frames.append(vals)
    return frames


def _match_shifts(shifts) -> str:
    shifts = np.atleast_1d(np.asarray(shifts, dtype=np.float64))
    if shifts.shape == (4,) and np.allclose(shifts, FOUR_STEP_SHIFTS, atol=1e-12):
        return "4-step"
    if shifts.shape == (3,) and np.allclose(shifts, THREE_STEP_SHIFTS, atol=1e-12):
        return "3-step"
    raise ParameterError(
        "unsupported shift set: expected {0, pi/2, pi, 3pi/2} or {0, pi/2, pi}, "
        f"got {np.array2string(shifts, precision=4)}"
    )


def psi_recover_field(stack, shifts, key: DecryptionKey) -> PsiResult:
    """Recover the object arm's sensor-plane field from a shift stack.

    For the 4-step set the cross-term combination is
    (I0 - I2) + i(I1 - I3) = 4 psi_o conj(psi_h); dividing by
    4 conj(psi_h) isolates psi_o. The 3-step set uses the standard
    three-frame combination. Pixels where |psi_h| is near zero are zeroed
    and counted in the result.
    """
    frames = _stack_values(stack)
    scheme = _match_shifts(shifts)
    if len(frames) != (4 if scheme == "4-step" else 3):
        raise ParameterError(f"{scheme} recovery needs matching stack length, got {len(frames)}")

    psi_h = key.host_field().values
    h_max = np.abs(psi_h).max()
    if h_max == 0.0:
        raise ParameterError("host field is identically zero; key cannot decrypt")

    if scheme == "4-step":
        numerator = (frames[0] - frames[2]) + 1j * (frames[1] - frames[3])
    else:
        # I0 = B + 2a, I1 = B + 2b, I2 = B - 2a with a + ib = psi_o conj(psi_h)
        numerator = (frames[0] - frames[2]) + 1j * (2 * frames[1] - frames[0] - frames[2])

    good = np.abs(psi_h) >= NEAR_ZERO_FRACTION * h_max
    recovered = np.zeros(psi_h.shape, dtype=np.complex128)
    recovered[good] = numerator[good] / (4.0 * np.conj(psi_h[good]))

    return PsiResult(
        field=ComplexField(recovered, key.pitch, key.wavelength),
        zeroed_pixels=int(np.size(good) - np.count_nonzero(good)),
    )


def decrypt(stack, shifts, key: DecryptionKey, object_attenuation: float | None = None) -> np.ndarray:
    """Full classical decryption: recover, back-propagate, demodulate.

    When the object-arm attenuation is known it rescales the modulus
    exactly; otherwise the output is normalized to peak 1. Output is
    clamped to [0, 1].
    """
    result = psi_recover_field(stack, shifts, key)
    at_slm = invert(result.field, PropagationSpec(key.object_distance, key.method))
    mag = np.abs(at_slm.values)
    if object_attenuation is not None:
        if not (np.isfinite(object_attenuation) and 0 < object_attenuation <= 1):
            raise ParameterError(
                f"object_attenuation must lie in (0, 1], got {object_attenuation}"
            )
        mag = mag / object_attenuation
    elif mag.max() > 0:
        mag = mag / mag.max()
    return np.clip(mag, 0.0, 1.0)
