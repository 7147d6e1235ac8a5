"""IDX image/label file parsing (the MNIST-family container format).

Layout is big-endian throughout. Image files: magic 0x00000803, then count,
rows, cols as 4-byte unsigned integers, then count*rows*cols row-major
uint8 pixels. Label files: magic 0x00000801, count, then count uint8
labels. Gzip-compressed files are transparently decompressed.
"""

from __future__ import annotations

import gzip
import struct
from pathlib import Path

import numpy as np

from .errors import FormatError

__all__ = [
    "IMAGES_MAGIC",
    "LABELS_MAGIC",
    "parse_idx_images",
    "parse_idx_labels",
    "write_idx_images",
    "load_idx_images",
]

IMAGES_MAGIC = 0x00000803
LABELS_MAGIC = 0x00000801


def _read_u32(data: bytes, offset: int, what: str) -> int:
    if len(data) < offset + 4:
        raise FormatError(f"truncated header while reading {what}", offset=len(data))
    return struct.unpack_from(">I", data, offset)[0]


def parse_idx_images(data: bytes) -> list[np.ndarray]:
    """Parse an IDX image payload into a list of [0, 1] float images.

    Record order is preserved. Raises :class:`FormatError` (with the byte
    offset where the problem was detected) on a bad magic number,
    nonpositive dimensions, or a truncated pixel payload. Trailing bytes
    beyond the declared payload are ignored.
    """
    magic = _read_u32(data, 0, "magic")
    if magic != IMAGES_MAGIC:
        raise FormatError(
            f"bad IDX image magic 0x{magic:08x}, expected 0x{IMAGES_MAGIC:08x}", offset=0
        )
    count = _read_u32(data, 4, "image count")
    rows = _read_u32(data, 8, "row count")
    cols = _read_u32(data, 12, "column count")
    if rows < 1 or cols < 1:
        raise FormatError(f"nonpositive image dimensions {rows}x{cols}", offset=8)
    need = count * rows * cols
    if len(data) - 16 < need:
        raise FormatError(
            f"truncated payload: need {need} pixel bytes for {count} images "
            f"of {rows}x{cols}, found {len(data) - 16}",
            offset=len(data),
        )
    pixels = np.frombuffer(data, dtype=np.uint8, count=need, offset=16)
    stack = pixels.reshape(count, rows, cols).astype(np.float64) / 255.0
    return [stack[i] for i in range(count)]


def parse_idx_labels(data: bytes) -> np.ndarray:
    """Parse an IDX label payload into a uint8 array."""
    magic = _read_u32(data, 0, "magic")
    if magic != LABELS_MAGIC:
        raise FormatError(
            f"bad IDX label magic 0x{magic:08x}, expected 0x{LABELS_MAGIC:08x}", offset=0
        )
    count = _read_u32(data, 4, "label count")
    if len(data) - 8 < count:
        raise FormatError(
            f"truncated payload: need {count} label bytes, found {len(data) - 8}",
            offset=len(data),
        )
    return np.frombuffer(data, dtype=np.uint8, count=count, offset=8).copy()


def write_idx_images(images) -> bytes:
    """Serialize a (n, rows, cols) uint8 stack to IDX image bytes."""
    arr = np.asarray(images)
    if arr.ndim != 3:
        raise FormatError(f"expected (n, rows, cols) stack, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if arr.min() < 0 or arr.max() > 255:
            raise FormatError("pixel values outside uint8 range")
        arr = arr.astype(np.uint8)
    header = struct.pack(">IIII", IMAGES_MAGIC, arr.shape[0], arr.shape[1], arr.shape[2])
    return header + arr.tobytes()


def load_idx_images(path) -> list[np.ndarray]:
    """Read an IDX image file from disk, gunzipping when required."""
    raw = Path(path).read_bytes()
    if raw[:2] == b"\x1f\x8b":
        raw = gzip.decompress(raw)
    return parse_idx_images(raw)
