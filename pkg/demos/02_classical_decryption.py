"""Classical decryption: four phase-shifted frames plus the host key.

Four interferograms with host-arm phase shifts {0, pi/2, pi, 3pi/2} pin
down the object arm's complex field; dividing by the conjugate host field
and propagating back to the modulator plane recovers the secret. The same
stack decrypted with the wrong host letter yields garbage, which is the
security claim of the scheme.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from holohide import (
    FOUR_STEP_SHIFTS,
    DecryptionKey,
    HidingParams,
    SensorModel,
    correlation_coefficient,
    decrypt,
    embed_on_slm,
    render_host,
    synthesize_psi_stack,
    synthetic_digits,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

params = HidingParams(sensor=SensorModel.off())
obj = embed_on_slm(synthetic_digits(1, seed=7)[0], 256, 128)
host_s = render_host("S", 256).mask
host_c = render_host("C", 256).mask

stack = synthesize_psi_stack(obj, host_s, params, FOUR_STEP_SHIFTS)


def key_with(host):
    return DecryptionKey(
        host_img=host,
        host_distance=params.host_distance,
        host_attenuation=params.host_attenuation,
        object_distance=params.object_distance,
        wavelength=params.wavelength,
        pitch=params.pitch,
    )


good = decrypt(stack, FOUR_STEP_SHIFTS, key_with(host_s), params.object_attenuation)
bad = decrypt(stack, FOUR_STEP_SHIFTS, key_with(host_c), params.object_attenuation)

cc_good = correlation_coefficient(good, obj)
cc_bad = correlation_coefficient(bad, obj)
print(f"correct key  CC = {cc_good:.6f}")
print(f"wrong key    CC = {cc_bad:.6f}")

fig, axes = plt.subplots(2, 4, figsize=(13, 6.5))
for k, (frame, shift) in enumerate(zip(stack, FOUR_STEP_SHIFTS)):
    axes[0, k].imshow(frame.values, cmap="gray")
    axes[0, k].set_title(f"frame, shift {shift:.2f} rad")
axes[1, 0].imshow(obj, cmap="gray")
axes[1, 0].set_title("ground truth")
axes[1, 1].imshow(good, cmap="gray")
axes[1, 1].set_title(f"correct key (CC {cc_good:.3f})")
axes[1, 2].imshow(bad, cmap="gray")
axes[1, 2].set_title(f"wrong key 'C' (CC {cc_bad:.3f})")
axes[1, 3].axis("off")
for ax in axes.ravel():
    ax.axis("off")
fig.tight_layout()
fig.savefig(out_dir / "02_decryption.png", dpi=120)
print(f"wrote {out_dir / '02_decryption.png'}")
