"""Hide a digit inside the diffraction field of a letter.

The object image rides on a weak beam, the host letter on a strong one;
after Fresnel propagation their interference is recorded. At the default
5:1 host:object amplitude ratio the recorded frame is dominated by the
host's diffraction pattern and the digit is not visible by eye.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from holohide import (
    HidingParams,
    SensorModel,
    embed_on_slm,
    render_host,
    synthesize,
    synthetic_digits,
)

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

digit = synthetic_digits(1, seed=42)[0]
obj = embed_on_slm(digit, canvas=256, scale=128)
host = render_host("S", 256).mask

fig, axes = plt.subplots(1, 5, figsize=(16, 3.6))
axes[0].imshow(obj, cmap="gray")
axes[0].set_title("object (secret)")
axes[1].imshow(host, cmap="gray")
axes[1].set_title("host 'S'")

for ax, ratio in zip(axes[2:], [1.0, 0.2, 0.05]):
    params = HidingParams(object_attenuation=ratio, sensor=SensorModel.off())
    ifg = synthesize(obj, host, params)
    ax.imshow(ifg.values, cmap="gray")
    ax.set_title(f"interferogram, object x{ratio:g}")

for ax in axes:
    ax.axis("off")
fig.tight_layout()
fig.savefig(out_dir / "01_hiding.png", dpi=120)
print(f"wrote {out_dir / '01_hiding.png'}")

ifg = synthesize(obj, host, HidingParams(sensor=SensorModel.off()))
contrast = np.std(ifg.values) / np.mean(ifg.values)
print(f"interferogram relative contrast at 5:1 ratio: {contrast:.3f}")
