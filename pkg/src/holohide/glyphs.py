"""Host-image glyphs shipped as fixed raster assets.

The host patterns are binary letter masks checked in as PNG files rather
than rendered from fonts at run time, so every installation produces
bit-identical hosts. Masks scale to the working grid by nearest-neighbor,
which preserves the {0, 1} value set.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np
from PIL import Image as PILImage

from .errors import ParameterError

__all__ = ["HostGlyph", "available_glyphs", "render_host"]


@dataclass(frozen=True)
class HostGlyph:
    glyph_id: str
    mask: np.ndarray

    def __post_init__(self):
        m = np.array(self.mask, dtype=np.float64, copy=True)
        if m.ndim != 2 or not np.isin(m, (0.0, 1.0)).all():
            raise ParameterError("glyph mask must be a 2D binary {0,1} array")
        m.setflags(write=False)
        object.__setattr__(self, "mask", m)


def available_glyphs() -> tuple[str, ...]:
    files = resources.files("holohide").joinpath("assets")
    names = sorted(
        p.name[len("glyph_") : -len(".png")]
        for p in files.iterdir()
        if p.name.startswith("glyph_") and p.name.endswith(".png")
    )
    return tuple(names)


def render_host(glyph_id: str, canvas: int) -> HostGlyph:
    """Load the shipped mask for ``glyph_id`` scaled to canvas x canvas."""
    canvas = int(canvas)
    if canvas < 2:
        raise ParameterError(f"canvas must be >= 2, got {canvas}")
    ref = resources.files("holohide").joinpath(f"assets/glyph_{glyph_id}.png")
    if not ref.is_file():
        raise ParameterError(
            f"unknown host glyph {glyph_id!r}; shipped glyphs: {available_glyphs()}"
        )
    with ref.open("rb") as fh:
        raw = np.asarray(PILImage.open(fh).convert("L"))
    base = (raw > 127).astype(np.float64)
    idx_y = (np.arange(canvas) * base.shape[0]) // canvas
    idx_x = (np.arange(canvas) * base.shape[1]) // canvas
    return HostGlyph(glyph_id, base[np.ix_(idx_y, idx_x)])
