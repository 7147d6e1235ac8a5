"""Procedural object-image pools.

The hiding experiments consume small grayscale object images (handwritten
digits or clothing thumbnails in the original protocol). When no IDX file
of real data is available, these generators provide deterministic stand-ins
with comparable structure: stroke-rendered digits with per-sample jitter,
and textured garment silhouettes. Everything is numpy-only and fully
reproducible from the seed.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError

__all__ = ["synthetic_digits", "synthetic_garments", "synthetic_source", "SOURCE_STYLES"]

SOURCE_STYLES = ("digits", "garments")

# Seven-segment endpoints in the unit square, y pointing down.
_SEGMENTS = {
    "A": ((0.25, 0.12), (0.75, 0.12)),
    "B": ((0.75, 0.12), (0.75, 0.50)),
    "C": ((0.75, 0.50), (0.75, 0.88)),
    "D": ((0.25, 0.88), (0.75, 0.88)),
    "E": ((0.25, 0.50), (0.25, 0.88)),
    "F": ((0.25, 0.12), (0.25, 0.50)),
    "G": ((0.25, 0.50), (0.75, 0.50)),
}
_DIGITS = {
    0: "ABCDEF",
    1: "BC",
    2: "ABGED",
    3: "ABGCD",
    4: "FGBC",
    5: "AFGCD",
    6: "AFGECD",
    7: "ABC",
    8: "ABCDEFG",
    9: "ABCDFG",
}


def _grids(size: int):
    ys, xs = np.mgrid[0:size, 0:size]
    return (ys + 0.5) / size, (xs + 0.5) / size


def _stroke_mask(ys, xs, p0, p1, width):
    """Pixels within width/2 of the segment p0-p1 ((x, y) in unit coords)."""
    (x0, y0), (x1, y1) = p0, p1
    dx, dy = x1 - x0, y1 - y0
    seg_sq = dx * dx + dy * dy
    if seg_sq == 0.0:
        dist = np.hypot(xs - x0, ys - y0)
    else:
        t = np.clip(((xs - x0) * dx + (ys - y0) * dy) / seg_sq, 0.0, 1.0)
        dist = np.hypot(xs - (x0 + t * dx), ys - (y0 + t * dy))
    return dist <= width / 2.0


def _blur(img: np.ndarray, passes: int = 2) -> np.ndarray:
    """Separable [1,2,1] smoothing with edge replication."""
    out = img
    for _ in range(passes):
        p = np.pad(out, ((1, 1), (0, 0)), mode="edge")
        out = (p[:-2] + 2 * p[1:-1] + p[2:]) / 4.0
        p = np.pad(out, ((0, 0), (1, 1)), mode="edge")
        out = (p[:, :-2] + 2 * p[:, 1:-1] + p[:, 2:]) / 4.0
    return out


def synthetic_digits(n: int, seed: int, size: int = 28) -> np.ndarray:
    """n stroke-rendered digit images, shape (n, size, size), values in [0, 1]."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    ys, xs = _grids(size)
    out = np.empty((n, size, size))
    for i in range(n):
        digit = int(rng.integers(0, 10))
        width = rng.uniform(0.10, 0.16)
        jitter = rng.normal(0.0, 0.02, size=(7, 2, 2))
        img = np.zeros((size, size))
        for j, name in enumerate(_SEGMENTS):
            if name not in _DIGITS[digit]:
                continue
            (p0, p1) = _SEGMENTS[name]
            q0 = (p0[0] + jitter[j, 0, 0], p0[1] + jitter[j, 0, 1])
            q1 = (p1[0] + jitter[j, 1, 0], p1[1] + jitter[j, 1, 1])
            img[_stroke_mask(ys, xs, q0, q1, width)] = 1.0
        img = _blur(img) * rng.uniform(0.75, 1.0)
        out[i] = np.clip(img, 0.0, 1.0)
    return out


def _garment_mask(kind: int, ys, xs, rng) -> np.ndarray:
    jx = rng.uniform(-0.04, 0.04)
    jy = rng.uniform(-0.04, 0.04)
    x = xs - jx
    y = ys - jy
    if kind == 0:  # t-shirt: torso, sleeves, neck notch
        m = (x > 0.30) & (x < 0.70) & (y > 0.22) & (y < 0.85)
        m |= (x > 0.12) & (x < 0.88) & (y > 0.22) & (y < 0.45)
        m &= ~(np.hypot(x - 0.5, y - 0.20) < 0.09)
        return m
    if kind == 1:  # trousers
        waist = (x > 0.30) & (x < 0.70) & (y > 0.15) & (y < 0.35)
        left = (x > 0.30) & (x < 0.47) & (y >= 0.35) & (y < 0.90)
        right = (x > 0.53) & (x < 0.70) & (y >= 0.35) & (y < 0.90)
        return waist | left | right
    if kind == 2:  # handbag
        body = (x > 0.25) & (x < 0.75) & (y > 0.42) & (y < 0.85)
        r = np.hypot(x - 0.5, y - 0.42)
        handle = (r > 0.16) & (r < 0.24) & (y < 0.42)
        return body | handle
    # dress: trapezoid widening toward the hem
    half = 0.10 + 0.30 * np.clip((y - 0.20) / 0.68, 0.0, 1.0)
    return (np.abs(x - 0.5) < half) & (y > 0.20) & (y < 0.88)


def synthetic_garments(n: int, seed: int, size: int = 28) -> np.ndarray:
    """n textured garment silhouettes, shape (n, size, size), values in [0, 1]."""
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    ys, xs = _grids(size)
    out = np.empty((n, size, size))
    for i in range(n):
        kind = int(rng.integers(0, 4))
        mask = _garment_mask(kind, ys, xs, rng).astype(float)
        # Low-frequency texture: coarse noise upsampled by pixel repetition.
        coarse = rng.normal(0.0, 1.0, size=(7, 7))
        reps = int(np.ceil(size / 7))
        tex = np.kron(coarse, np.ones((reps, reps)))[:size, :size]
        tex = _blur(tex, passes=2)
        img = mask * np.clip(0.75 + 0.2 * tex, 0.3, 1.0) * rng.uniform(0.8, 1.0)
        out[i] = np.clip(_blur(img, passes=1), 0.0, 1.0)
    return out


def synthetic_source(style: str, n: int, seed: int, size: int = 28) -> np.ndarray:
    if style == "digits":
        return synthetic_digits(n, seed, size)
    if style == "garments":
        return synthetic_garments(n, seed, size)
    raise ParameterError(f"unknown source style {style!r}; expected one of {SOURCE_STYLES}")
