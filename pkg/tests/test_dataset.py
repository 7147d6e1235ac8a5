import gzip
import hashlib
import json
import os
import struct
from pathlib import Path

import numpy as np
import pytest

from holohide import (
    FormatError,
    GenerationConfig,
    HidingParams,
    ParameterError,
    SensorModel,
    embed_on_slm,
    generate,
    iter_split,
    load_idx_images,
    load_interferogram,
    load_ground_truth,
    load_manifest,
    parse_idx_images,
    parse_idx_labels,
    plan_split,
    render_host,
    synthetic_digits,
    synthetic_garments,
    synthetic_source,
    write_idx_images,
)
from holohide.dataset import read_image_png, write_image_png


def small_config(out, **kw):
    kw.setdefault("source", "custom")
    kw.setdefault("n_total", 4)
    kw.setdefault("n_test", 2)
    kw.setdefault("crop", 32)
    kw.setdefault("sim_grid", 64)
    kw.setdefault("slm_scale", 32)
    kw.setdefault("synthetic_pool", 16)
    kw.setdefault("dataset_seed", 7)
    kw.setdefault(
        "hiding", HidingParams(sensor=SensorModel(0.01, 8, 0))
    )
    return GenerationConfig(out_dir=str(out), **kw)


def tree_digest(root):
    root = Path(root)
    h = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.is_file():
            h.update(str(p.relative_to(root)).encode())
            h.update(p.read_bytes())
    return h.hexdigest()


class TestIdx:
    def test_handcrafted_fixture(self):
        blob = struct.pack(">IIII", 0x00000803, 1, 2, 2) + bytes([0, 128, 255, 64])
        imgs = parse_idx_images(blob)
        assert len(imgs) == 1
        assert np.allclose(imgs[0], [[0.0, 128 / 255], [1.0, 64 / 255]])

    def test_bad_magic(self):
        blob = struct.pack(">IIII", 0x00000801, 1, 2, 2) + bytes(4)
        with pytest.raises(FormatError) as exc:
            parse_idx_images(blob)
        assert exc.value.offset == 0

    def test_truncated_payload(self):
        blob = struct.pack(">IIII", 0x00000803, 1, 2, 2)
        with pytest.raises(FormatError) as exc:
            parse_idx_images(blob)
        assert "truncated" in str(exc.value)
        assert exc.value.offset == len(blob)

    def test_truncated_header(self):
        with pytest.raises(FormatError):
            parse_idx_images(b"\x00\x00\x08")

    def test_zero_dimension_rejected(self):
        blob = struct.pack(">IIII", 0x00000803, 1, 0, 2)
        with pytest.raises(FormatError):
            parse_idx_images(blob)

    def test_record_order_preserved_roundtrip(self):
        stack = (synthetic_digits(5, 1) * 255).astype(np.uint8)
        imgs = parse_idx_images(write_idx_images(stack))
        assert len(imgs) == 5
        for got, want in zip(imgs, stack):
            assert np.array_equal(got, want / 255.0)

    def test_labels(self):
        blob = struct.pack(">II", 0x00000801, 3) + bytes([7, 0, 9])
        assert parse_idx_labels(blob).tolist() == [7, 0, 9]
        with pytest.raises(FormatError):
            parse_idx_labels(struct.pack(">II", 0x00000801, 5) + bytes(2))
        with pytest.raises(FormatError):
            parse_idx_labels(struct.pack(">II", 0x00000803, 0))

    def test_gzip_load(self, tmp_path):
        stack = (synthetic_digits(2, 2) * 255).astype(np.uint8)
        path = tmp_path / "digits-idx3-ubyte.gz"
        path.write_bytes(gzip.compress(write_idx_images(stack)))
        imgs = load_idx_images(path)
        assert len(imgs) == 2

    def test_official_shape_scale(self, tmp_path):
        # Full official header geometry (60000 x 28 x 28) on synthetic bytes.
        n = 60000
        payload = np.zeros((n, 28, 28), dtype=np.uint8)
        path = tmp_path / "train-images-idx3-ubyte"
        path.write_bytes(write_idx_images(payload))
        imgs = load_idx_images(path)
        assert len(imgs) == n and imgs[0].shape == (28, 28)

    @pytest.mark.skipif(
        "HOLOHIDE_MNIST_IDX" not in os.environ,
        reason="set HOLOHIDE_MNIST_IDX to an official MNIST image file to run",
    )
    def test_official_file(self):
        imgs = load_idx_images(os.environ["HOLOHIDE_MNIST_IDX"])
        assert len(imgs) == 60000
        assert imgs[0].shape == (28, 28)


class TestSources:
    @pytest.mark.parametrize("fn", [synthetic_digits, synthetic_garments])
    def test_shape_range_determinism(self, fn):
        a = fn(4, 99)
        b = fn(4, 99)
        c = fn(4, 100)
        assert a.shape == (4, 28, 28)
        assert a.min() >= 0.0 and a.max() <= 1.0
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_style_selector(self):
        assert synthetic_source("digits", 2, 0).shape == (2, 28, 28)
        assert synthetic_source("garments", 2, 0).shape == (2, 28, 28)
        with pytest.raises(ParameterError):
            synthetic_source("faces", 2, 0)


class TestGlyphs:
    def test_shipped_s(self):
        g = render_host("S", 256)
        assert g.mask.shape == (256, 256)
        assert set(np.unique(g.mask)) <= {0.0, 1.0}
        assert g.mask.sum() > 0

    def test_shipped_c_differs(self):
        s = render_host("S", 128).mask
        c = render_host("C", 128).mask
        assert not np.array_equal(s, c)

    def test_unknown_glyph(self):
        with pytest.raises(ParameterError):
            render_host("Z", 64)


class TestSplit:
    def test_counts_paper_protocol(self):
        train, test = plan_split(0, 4000, 3000, 300)
        assert len(train) == 2700 and len(test) == 300

    def test_disjoint_and_deterministic(self):
        t1, s1 = plan_split(5, 100, 50, 10)
        t2, s2 = plan_split(5, 100, 50, 10)
        assert t1 == t2 and s1 == s2
        assert set(t1).isdisjoint(s1)

    def test_shared_test_pool_across_volumes(self):
        pools = [plan_split(3, 4000, n, 300)[1] for n in (1000, 2000, 3000)]
        assert pools[0] == pools[1] == pools[2]

    def test_overdraw_rejected(self):
        with pytest.raises(ParameterError):
            plan_split(0, 10, 11, 2)


class TestPngIO:
    def test_roundtrip_8bit(self, tmp_path, rng):
        img = rng.random((16, 16))
        write_image_png(tmp_path / "x.png", img, 8)
        back = read_image_png(tmp_path / "x.png")
        assert np.abs(back - img).max() <= 0.5 / 255 + 1e-12

    def test_roundtrip_16bit_scaled(self, tmp_path, rng):
        vals = rng.random((16, 16)) * 123.0
        scale = float(vals.max())
        write_image_png(tmp_path / "y.png", vals, 16, scale=scale)
        back = read_image_png(tmp_path / "y.png") * scale
        assert np.abs(back - vals).max() <= 0.5 * scale / 65535 + 1e-12


class TestGenerate:
    def test_manifest_and_files(self, tmp_path):
        cfg = small_config(tmp_path / "d1")
        man = generate(cfg)
        assert man.n_train == 2 and man.n_test == 2
        assert len(man.samples) == 4
        for rec in man.samples:
            assert (tmp_path / "d1" / rec.object_file).exists()
            assert (tmp_path / "d1" / rec.interferogram_file).exists()
        loaded = load_manifest(tmp_path / "d1" / "manifest.json")
        assert loaded == man

    def test_byte_identical_rerun(self, tmp_path):
        generate(small_config(tmp_path / "a"))
        generate(small_config(tmp_path / "b"))
        assert tree_digest(tmp_path / "a") == tree_digest(tmp_path / "b")

    def test_reader_roundtrip_within_quantization(self, tmp_path):
        cfg = small_config(tmp_path / "d2", write_f32=True)
        man = generate(cfg)
        root = tmp_path / "d2"
        for rec in man.samples:
            exact = load_interferogram(root, rec, prefer_f32=True)
            png = load_interferogram(root, rec)
            assert np.abs(exact - png).max() <= 0.5 * rec.ifg_scale / 65535 + 1e-6

    def test_ground_truth_matches_embedding(self, tmp_path):
        cfg = small_config(tmp_path / "d3", crop=64)  # no crop: full grid
        man = generate(cfg)
        pool = synthetic_source(cfg.source_style, cfg.synthetic_pool, cfg.dataset_seed)
        rec = man.samples[0]
        expected = embed_on_slm(pool[rec.source_index], 64, 32)
        got = load_ground_truth(tmp_path / "d3", rec)
        assert np.abs(got - expected).max() <= 0.5 / 255 + 1e-12

    def test_crop_is_central(self, tmp_path):
        cfg = small_config(tmp_path / "d4", sim_grid=64, crop=32)
        man = generate(cfg)
        gt = load_ground_truth(tmp_path / "d4", man.samples[0])
        assert gt.shape == (32, 32)

    def test_ablation_trio_shares_test_files(self, tmp_path):
        digests = {}
        for n_total in (6, 8, 10):
            out = tmp_path / f"vol{n_total}"
            man = generate(small_config(out, n_total=n_total, n_test=3))
            test_recs = man.split_records("test")
            assert len(test_recs) == 3
            digests[n_total] = [
                (
                    r.source_index,
                    hashlib.sha256((out / r.interferogram_file).read_bytes()).hexdigest(),
                    hashlib.sha256((out / r.object_file).read_bytes()).hexdigest(),
                )
                for r in sorted(test_recs, key=lambda r: r.source_index)
            ]
        assert digests[6] == digests[8] == digests[10]

    def test_iter_split(self, tmp_path):
        cfg = small_config(tmp_path / "d5")
        man = generate(cfg)
        pairs = list(iter_split(tmp_path / "d5", man, "test"))
        assert len(pairs) == 2
        rec, gt, ifg = pairs[0]
        assert gt.shape == (32, 32) and ifg.shape == (32, 32)
        assert rec.split == "test"

    def test_idx_source_path(self, tmp_path):
        stack = (synthetic_digits(12, 3) * 255).astype(np.uint8)
        idx_file = tmp_path / "digits.idx"
        idx_file.write_bytes(write_idx_images(stack))
        cfg = small_config(tmp_path / "d6", source="mnist", source_path=str(idx_file))
        man = generate(cfg)
        assert man.source == "mnist"
        rec = man.samples[0]
        expected = embed_on_slm(stack[rec.source_index] / 255.0, 64, 32)[16:48, 16:48]
        got = load_ground_truth(tmp_path / "d6", rec)
        assert np.abs(got - expected).max() <= 0.5 / 255 + 1e-12

    def test_config_validation(self, tmp_path):
        with pytest.raises(ParameterError):
            small_config(tmp_path, n_total=2, n_test=2)
        with pytest.raises(ParameterError):
            small_config(tmp_path, crop=128, sim_grid=64)
        with pytest.raises(ParameterError):
            small_config(tmp_path, source="imagenet")

    def test_manifest_schema_version_checked(self, tmp_path):
        cfg = small_config(tmp_path / "d7")
        generate(cfg)
        path = tmp_path / "d7" / "manifest.json"
        doc = json.loads(path.read_text())
        doc["schema_version"] = 99
        path.write_text(json.dumps(doc))
        with pytest.raises(FormatError):
            load_manifest(path)

    def test_manifest_hiding_params_roundtrip(self, tmp_path):
        cfg = small_config(tmp_path / "d8")
        man = generate(cfg)
        assert man.hiding_params() == cfg.hiding
