"""Paired (interferogram, ground truth) corpus generation and on-disk format.

A generated corpus is a directory:

    <out>/manifest.json        declarative record of everything below
    <out>/gt/<index>.png       8-bit grayscale ground-truth object image
    <out>/ifg/<index>.png      16-bit grayscale interferogram, scaled by a
                               per-file maximum recorded in the manifest
    <out>/ifg/<index>.f32      optional raw little-endian float32 dump

Generation is deterministic: the split is a seeded shuffle of source
indices with the test pool drawn first (so data-volume ablations that vary
n_train share one test pool), and each sample's sensor noise seed derives
from (dataset_seed, source_index), making shared test samples byte-equal
across ablation corpora.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np
from PIL import Image as PILImage

from .errors import FormatError, ParameterError
from .field import as_image
from .glyphs import render_host
from .hiding import HidingParams, SensorModel, embed_on_slm, synthesize
from .idx import load_idx_images
from .sources import SOURCE_STYLES, synthetic_source

__all__ = [
    "SCHEMA_VERSION",
    "SOURCES",
    "GenerationConfig",
    "SampleRecord",
    "DatasetManifest",
    "plan_split",
    "generate",
    "load_manifest",
    "load_ground_truth",
    "load_interferogram",
    "iter_split",
    "write_image_png",
    "read_image_png",
]

SCHEMA_VERSION = 1
SOURCES = ("mnist", "fashion-mnist", "custom")


@dataclass(frozen=True)
class GenerationConfig:
    """Everything needed to produce one corpus, minus nothing.

    ``source_path`` points at an IDX image file for real data; when omitted
    a procedural pool is synthesized (digit-style for mnist/custom,
    garment-style for fashion-mnist) of size ``synthetic_pool``.
    """

    out_dir: str
    source: str = "custom"
    source_path: str | None = None
    host_id: str = "S"
    n_total: int = 3000
    n_test: int = 300
    crop: int = 256
    sim_grid: int = 256
    slm_scale: int | None = None
    hiding: HidingParams = dc_field(default_factory=HidingParams)
    dataset_seed: int = 0
    write_f32: bool = False
    synthetic_pool: int = 4000

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ParameterError(f"source must be one of {SOURCES}, got {self.source!r}")
        if self.n_total < 1 or self.n_test < 0 or self.n_test >= self.n_total:
            raise ParameterError(
                f"need 0 <= n_test < n_total, got n_total={self.n_total}, n_test={self.n_test}"
            )
        if self.crop < 2 or self.sim_grid < 2:
            raise ParameterError("crop and sim_grid must be >= 2")
        if self.crop > self.sim_grid:
            raise ParameterError(
                f"crop {self.crop} exceeds simulation grid {self.sim_grid}"
            )

    @property
    def n_train(self) -> int:
        return self.n_total - self.n_test

    @property
    def resolved_slm_scale(self) -> int:
        return self.sim_grid // 2 if self.slm_scale is None else self.slm_scale

    @property
    def source_style(self) -> str:
        return "garments" if self.source == "fashion-mnist" else "digits"


@dataclass(frozen=True)
class SampleRecord:
    index: int
    split: str
    source_index: int
    object_file: str
    interferogram_file: str
    ifg_scale: float
    sensor_seed: int
    f32_file: str | None = None


@dataclass(frozen=True)
class DatasetManifest:
    schema_version: int
    dataset_seed: int
    source: str
    source_path: str | None
    host_id: str
    n_total: int
    n_train: int
    n_test: int
    crop: int
    sim_grid: int
    slm_scale: int
    write_f32: bool
    hiding: dict
    samples: tuple[SampleRecord, ...]

    def to_json(self) -> str:
        doc = dataclasses.asdict(self)
        doc["samples"] = [dataclasses.asdict(s) for s in self.samples]
        return json.dumps(doc, sort_keys=True, indent=2)

    def save(self, path) -> None:
        Path(path).write_text(self.to_json() + "\n")

    def hiding_params(self) -> HidingParams:
        h = dict(self.hiding)
        h["sensor"] = SensorModel(**h["sensor"])
        return HidingParams(**h)

    def split_records(self, split: str) -> list[SampleRecord]:
        if split not in ("train", "test"):
            raise ParameterError(f"split must be 'train' or 'test', got {split!r}")
        return [s for s in self.samples if s.split == split]


def load_manifest(path) -> DatasetManifest:
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"manifest {p} is not valid JSON: {exc}") from exc
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise FormatError(
            f"manifest schema {doc.get('schema_version')!r} unsupported "
            f"(expected {SCHEMA_VERSION})"
        )
    try:
        samples = tuple(SampleRecord(**s) for s in doc.pop("samples"))
        return DatasetManifest(samples=samples, **doc)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"manifest {p} is missing fields: {exc}") from exc


def plan_split(dataset_seed: int, available: int, n_total: int, n_test: int):
    """Deterministic (train_indices, test_indices) into the source pool.

    The shuffled pool's head becomes the test set, so corpora that differ
    only in n_total share their test source indices.
    """
    if n_total > available:
        raise ParameterError(
            f"n_total={n_total} exceeds the {available} available source images"
        )
    perm = np.random.default_rng(dataset_seed).permutation(available)
    test = perm[:n_test]
    train = perm[n_test:n_total]
    return train.tolist(), test.tolist()


def sample_sensor_seed(dataset_seed: int, source_index: int) -> int:
    return int(np.random.SeedSequence([dataset_seed, source_index]).generate_state(1)[0])


def write_image_png(path, values: np.ndarray, bit_depth: int, scale: float | None = None):
    """Write a grayscale PNG; 16-bit values are premultiplied by 1/scale."""
    path = Path(path)
    if bit_depth == 8:
        q = np.round(np.clip(values, 0.0, 1.0) * 255).astype(np.uint8)
    elif bit_depth == 16:
        s = 1.0 if not scale else scale
        q = np.round(np.clip(values / s, 0.0, 1.0) * 65535).astype(np.uint16)
    else:
        raise ParameterError(f"png bit depth must be 8 or 16, got {bit_depth}")
    PILImage.fromarray(q).save(path, format="PNG")


def read_image_png(path) -> np.ndarray:
    """Read a grayscale PNG into [0, 1] floats (8- or 16-bit)."""
    with PILImage.open(path) as im:
        arr = np.asarray(im)
    if arr.dtype == np.uint8:
        return arr.astype(np.float64) / 255.0
    if arr.dtype in (np.uint16, np.int32):
        return arr.astype(np.float64) / 65535.0
    raise FormatError(f"unsupported PNG pixel type {arr.dtype} in {path}")


def _central_crop(arr: np.ndarray, crop: int) -> np.ndarray:
    if arr.shape[0] == crop and arr.shape[1] == crop:
        return arr
    oy = (arr.shape[0] - crop) // 2
    ox = (arr.shape[1] - crop) // 2
    return arr[oy : oy + crop, ox : ox + crop]


def _source_pool(config: GenerationConfig) -> list[np.ndarray]:
    if config.source_path is not None:
        pool = load_idx_images(config.source_path)
        for img in pool:
            if img.shape[0] != img.shape[1]:
                raise FormatError(
                    f"source images must be square, got {img.shape} in {config.source_path}"
                )
        return pool
    style = config.source_style
    assert style in SOURCE_STYLES
    stack = synthetic_source(style, config.synthetic_pool, config.dataset_seed)
    return [stack[i] for i in range(stack.shape[0])]


def generate(config: GenerationConfig) -> DatasetManifest:
    """Generate a corpus directory and return its manifest.

    Byte-identical output for identical config (noise seeds included).
    """
    out = Path(config.out_dir)
    (out / "gt").mkdir(parents=True, exist_ok=True)
    (out / "ifg").mkdir(parents=True, exist_ok=True)

    pool = _source_pool(config)
    train_idx, test_idx = plan_split(
        config.dataset_seed, len(pool), config.n_total, config.n_test
    )
    host = render_host(config.host_id, config.sim_grid).mask
    scale_px = config.resolved_slm_scale

    records = []
    ordered = [("train", i) for i in train_idx] + [("test", i) for i in test_idx]
    for index, (split, src_idx) in enumerate(ordered):
        obj = embed_on_slm(as_image(pool[src_idx]), config.sim_grid, scale_px)
        seed = sample_sensor_seed(config.dataset_seed, src_idx)
        ifg = synthesize(
            obj,
            host,
            config.hiding,
            seed=seed,
            provenance={"source_index": str(src_idx), "host": config.host_id},
        )
        gt = _central_crop(obj, config.crop)
        vals = _central_crop(ifg.values, config.crop)
        ifg_scale = float(vals.max())

        gt_file = f"gt/{index}.png"
        ifg_file = f"ifg/{index}.png"
        write_image_png(out / gt_file, gt, 8)
        write_image_png(out / ifg_file, vals, 16, scale=ifg_scale)
        f32_file = None
        if config.write_f32:
            f32_file = f"ifg/{index}.f32"
            (out / f32_file).write_bytes(vals.astype("<f4").tobytes())
        records.append(
            SampleRecord(
                index=index,
                split=split,
                source_index=int(src_idx),
                object_file=gt_file,
                interferogram_file=ifg_file,
                ifg_scale=ifg_scale,
                sensor_seed=seed,
                f32_file=f32_file,
            )
        )

    manifest = DatasetManifest(
        schema_version=SCHEMA_VERSION,
        dataset_seed=config.dataset_seed,
        source=config.source,
        source_path=config.source_path,
        host_id=config.host_id,
        n_total=config.n_total,
        n_train=config.n_train,
        n_test=config.n_test,
        crop=config.crop,
        sim_grid=config.sim_grid,
        slm_scale=scale_px,
        write_f32=config.write_f32,
        hiding=dataclasses.asdict(config.hiding),
        samples=tuple(records),
    )
    manifest.save(out / "manifest.json")
    return manifest


def load_ground_truth(root, record: SampleRecord) -> np.ndarray:
    return read_image_png(Path(root) / record.object_file)


def load_interferogram(root, record: SampleRecord, prefer_f32: bool = False) -> np.ndarray:
    """Interferogram in absolute intensity units (scale multiplied back)."""
    root = Path(root)
    if prefer_f32 and record.f32_file is not None:
        raw = np.frombuffer((root / record.f32_file).read_bytes(), dtype="<f4")
        side = int(np.sqrt(raw.size))
        return raw.reshape(side, side).astype(np.float64)
    return read_image_png(root / record.interferogram_file) * record.ifg_scale


def iter_split(root, manifest: DatasetManifest, split: str):
    """Yield (record, ground_truth, interferogram) for one split."""
    for rec in manifest.split_records(split):
        yield rec, load_ground_truth(root, rec), load_interferogram(root, rec)
