"""Build a training corpus for the learned reconstructor.

Each sample pairs a recorded interferogram with the ground-truth object it
hides. The manifest records the split, the physics, and per-file scales so
a run is reproducible bit for bit; the trainer package consumes exactly
this directory layout.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from holohide import GenerationConfig, generate, iter_split

out_dir = Path(__file__).parent / "out"
corpus = out_dir / "mini-corpus"

config = GenerationConfig(
    out_dir=str(corpus),
    source="fashion-mnist",  # procedural garment stand-ins without an IDX file
    n_total=12,
    n_test=4,
    crop=128,
    sim_grid=128,
    slm_scale=64,
    synthetic_pool=64,
    dataset_seed=3,
)
manifest = generate(config)
print(f"generated {manifest.n_train} train / {manifest.n_test} test samples in {corpus}")

fig, axes = plt.subplots(2, 4, figsize=(12, 6))
for col, (rec, gt, ifg) in enumerate(iter_split(corpus, manifest, "test")):
    axes[0, col].imshow(ifg, cmap="gray")
    axes[0, col].set_title(f"interferogram #{rec.index}")
    axes[1, col].imshow(gt, cmap="gray")
    axes[1, col].set_title(f"ground truth #{rec.index}")
for ax in axes.ravel():
    ax.axis("off")
fig.tight_layout()
fig.savefig(out_dir / "04_corpus.png", dpi=120)
print(f"wrote {out_dir / '04_corpus.png'}")
