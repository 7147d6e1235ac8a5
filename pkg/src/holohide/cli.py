"""Command-line surface for reproducible hiding/decryption experiment runs.

Subcommands: synth, generate, psi-decrypt, sweep, metrics. Every command is
deterministic given --seed, writes its resolved configuration as JSON next
to its outputs, and uses the exit-code contract:

    0  success
    2  usage or configuration error
    3  data/format error (unreadable or malformed files)
    4  numerical failure (e.g. undefined correlation coefficient)

The default output root comes from $HOLOHIDE_OUT (falling back to the
current directory); --out always wins.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np
from PIL import Image as PILImage, UnidentifiedImageError

from . import dataset as ds
from .errors import FormatError, ParameterError, UndefinedMetricError
from .experiments import SWEEP_KINDS, plot_sweep, run_sweep, write_sweep_csv
from .field import as_image
from .glyphs import render_host
from .hiding import HidingParams, SensorModel, embed_on_slm, synthesize, synthesize_psi_stack
from .metrics import report
from .psi import DecryptionKey, decrypt

_SHIFT_TOKENS = {"0": 0.0, "pi/2": np.pi / 2, "pi": np.pi, "3pi/2": 3 * np.pi / 2}


def _out_dir(args, default_name: str) -> Path:
    if args.out:
        out = Path(args.out)
    else:
        out = Path(os.environ.get("HOLOHIDE_OUT", ".")) / default_name
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_resolved(out: Path, command: str, resolved: dict) -> None:
    doc = {"command": command, **resolved}
    (out / "run_config.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _add_params_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("hiding parameters")
    g.add_argument("--wavelength", type=float, help="meters (default 633e-9)")
    g.add_argument("--pitch", type=float, help="meters/pixel (default 7.4e-6)")
    g.add_argument("--object-distance", type=float, help="meters (default 0.2)")
    g.add_argument("--host-distance", type=float, help="meters (default 0.2)")
    g.add_argument("--object-attenuation", type=float, help="(0,1], default 0.2")
    g.add_argument("--host-attenuation", type=float, help="(0,1], default 1.0")
    g.add_argument("--phase-shift", type=float, help="radians on the host arm, default 0")
    g.add_argument("--noise-sigma", type=float, help="sensor noise fraction, default 0.01")
    g.add_argument("--bit-depth", type=int, choices=(0, 8, 16), help="sensor quantization")
    g.add_argument("--method", choices=("fresnel-transfer-function", "angular-spectrum"))


def _params_from(args, base: dict | None = None, seed: int | None = None) -> HidingParams:
    """Overlay CLI flags (> config file > defaults) into HidingParams."""
    merged = dict(base or {})
    sensor = dict(merged.pop("sensor", {}))
    for flag, key in [
        ("wavelength", "wavelength"),
        ("pitch", "pitch"),
        ("object_distance", "object_distance"),
        ("host_distance", "host_distance"),
        ("object_attenuation", "object_attenuation"),
        ("host_attenuation", "host_attenuation"),
        ("phase_shift", "phase_shift"),
        ("method", "method"),
    ]:
        v = getattr(args, flag, None)
        if v is not None:
            merged[key] = v
    if getattr(args, "noise_sigma", None) is not None:
        sensor["gaussian_noise_sigma"] = args.noise_sigma
    if getattr(args, "bit_depth", None) is not None:
        sensor["bit_depth"] = args.bit_depth
    if seed is not None:
        sensor["seed"] = seed
    merged["sensor"] = SensorModel(**sensor)
    return HidingParams(**merged)


def _read_object_image(path) -> np.ndarray:
    try:
        with PILImage.open(path) as im:
            arr = np.asarray(im.convert("L"))
    except (OSError, UnidentifiedImageError) as exc:
        raise FormatError(f"cannot read image {path}: {exc}") from exc
    return arr.astype(np.float64) / 255.0


def _parse_shifts(text: str) -> list[float]:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in _SHIFT_TOKENS:
            out.append(_SHIFT_TOKENS[tok])
        else:
            try:
                out.append(float(tok))
            except ValueError as exc:
                raise ParameterError(f"bad shift token {tok!r}") from exc
    return out


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise ParameterError(f"bad grid {text!r}") from exc


def _host_image(args, canvas: int) -> tuple[np.ndarray, str]:
    if getattr(args, "host_image", None):
        return as_image(_read_object_image(args.host_image)), str(args.host_image)
    glyph = getattr(args, "host_glyph", None) or "S"
    return render_host(glyph, canvas).mask, glyph


def _save_interferogram(out: Path, stem: str, values: np.ndarray, meta: dict) -> None:
    scale = float(values.max())
    ds.write_image_png(out / f"{stem}.png", values, 16, scale=scale)
    sidecar = {"scale": scale, **meta}
    (out / f"{stem}.json").write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")


def _load_interferogram_file(path) -> np.ndarray:
    p = Path(path)
    if not p.exists():
        raise FormatError(f"no such interferogram file: {p}")
    sidecar = p.with_suffix(".json")
    scale = 1.0
    if sidecar.exists():
        scale = float(json.loads(sidecar.read_text()).get("scale", 1.0))
    return ds.read_image_png(p) * scale


# ---------------------------------------------------------------- commands


def _cmd_synth(args) -> int:
    out = _out_dir(args, "synth")
    seed = args.seed or 0
    params = _params_from(args, seed=seed)
    obj = _read_object_image(args.object)
    canvas = args.canvas
    if obj.shape != (canvas, canvas):
        scale_px = args.slm_scale if args.slm_scale else canvas // 2
        obj = embed_on_slm(as_image(obj), canvas, scale_px)
    host, host_name = _host_image(args, canvas)

    meta = {
        "object": str(args.object),
        "host": host_name,
        "params": dataclasses.asdict(params),
    }
    if args.psi_shifts:
        shifts = _parse_shifts(args.psi_shifts)
        stack = synthesize_psi_stack(obj, host, params, shifts, seed=seed)
        for k, (frame, s) in enumerate(zip(stack, shifts)):
            _save_interferogram(out, f"ifg_{k:03d}", frame.values, {**meta, "shift": s})
        frames = [f"ifg_{k:03d}.png" for k in range(len(stack))]
        (out / "stack.json").write_text(
            json.dumps({"frames": frames, "shifts": shifts}, indent=2) + "\n"
        )
    else:
        ifg = synthesize(obj, host, params, seed=seed)
        _save_interferogram(out, "ifg", ifg.values, meta)
    ds.write_image_png(out / "gt.png", obj, 8)
    _write_resolved(out, "synth", {"seed": seed, **meta, "canvas": canvas})
    print(f"synth: wrote {out}")
    return 0


def _cmd_generate(args) -> int:
    base = {}
    if args.config:
        cfg_path = Path(args.config)
        if not cfg_path.exists():
            raise FormatError(f"no such config file: {cfg_path}")
        try:
            base = json.loads(cfg_path.read_text())
        except json.JSONDecodeError as exc:
            raise FormatError(f"config {cfg_path} is not valid JSON: {exc}") from exc

    hiding = _params_from(args, base=base.pop("hiding", {}))
    for flag, key in [
        ("out", "out_dir"),
        ("source", "source"),
        ("source_path", "source_path"),
        ("host_glyph", "host_id"),
        ("n_total", "n_total"),
        ("n_test", "n_test"),
        ("crop", "crop"),
        ("sim_grid", "sim_grid"),
        ("slm_scale", "slm_scale"),
        ("seed", "dataset_seed"),
        ("write_f32", "write_f32"),
    ]:
        v = getattr(args, flag, None)
        if v is not None:
            base[key] = v
    if "out_dir" not in base:
        base["out_dir"] = str(_out_dir(args, "dataset"))
    try:
        config = ds.GenerationConfig(hiding=hiding, **base)
    except TypeError as exc:
        raise ParameterError(f"bad generation config: {exc}") from exc

    manifest = ds.generate(config)
    resolved = dataclasses.asdict(config)
    resolved["hiding"] = dataclasses.asdict(hiding)
    _write_resolved(Path(config.out_dir), "generate", resolved)
    print(
        f"generate: {manifest.n_train} train + {manifest.n_test} test samples "
        f"under {config.out_dir}"
    )
    return 0


def _key_from(args, canvas: int) -> tuple[DecryptionKey, float | None]:
    doc = {}
    if args.key:
        key_path = Path(args.key)
        if not key_path.exists():
            raise FormatError(f"no such key file: {key_path}")
        doc = json.loads(key_path.read_text())
    host_img = None
    if "host_image" in doc:
        host_img = _read_object_image(doc["host_image"])
    else:
        glyph = doc.get("host_glyph", getattr(args, "host_glyph", None) or "S")
        host_img = render_host(glyph, int(doc.get("canvas", canvas))).mask
    defaults = HidingParams()
    key = DecryptionKey(
        host_img=host_img,
        host_distance=float(doc.get("host_distance", defaults.host_distance)),
        host_attenuation=float(doc.get("host_attenuation", defaults.host_attenuation)),
        object_distance=float(doc.get("object_distance", defaults.object_distance)),
        wavelength=float(doc.get("wavelength", defaults.wavelength)),
        pitch=float(doc.get("pitch", defaults.pitch)),
        method=doc.get("method", defaults.method),
    )
    att = doc.get("object_attenuation")
    return key, (float(att) if att is not None else None)


def _cmd_psi_decrypt(args) -> int:
    out = _out_dir(args, "psi-decrypt")
    frames = [_load_interferogram_file(p) for p in args.frames]
    shifts = _parse_shifts(args.shifts)
    key, att = _key_from(args, canvas=frames[0].shape[0])
    recon = decrypt(frames, shifts, key, object_attenuation=att)
    ds.write_image_png(out / "decrypted.png", recon, 8)

    resolved = {
        "frames": [str(f) for f in args.frames],
        "shifts": shifts,
        "key": str(args.key) if args.key else "(defaults)",
    }
    if args.ground_truth:
        gt = _read_object_image(args.ground_truth)
        rep = report(recon, gt)
        with open(out / "metrics.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["decrypted", "ground_truth", "cc", "mse", "n_pixels"])
            w.writerow(
                ["decrypted.png", str(args.ground_truth), f"{rep.cc:.10g}", f"{rep.mse:.10g}", rep.n_pixels]
            )
        resolved["cc"] = rep.cc
        resolved["mse"] = rep.mse
        print(f"psi-decrypt: CC={rep.cc:.6f} MSE={rep.mse:.6g}")
    else:
        print("psi-decrypt: wrote decrypted.png (no ground truth given)")
    _write_resolved(out, "psi-decrypt", resolved)
    return 0


def _cmd_sweep(args) -> int:
    out = _out_dir(args, "sweep")
    seed = args.seed or 0
    grid = _parse_grid(args.grid)
    params = _params_from(args)
    rows = run_sweep(
        args.kind,
        grid,
        args.trials,
        params,
        seed=seed,
        host_id=args.host_glyph or "S",
        sim_grid=args.canvas,
        slm_scale=args.slm_scale,
    )
    csv_path = out / "sweep.csv"
    write_sweep_csv(rows, csv_path)
    if not args.no_plot:
        plot_sweep(csv_path, out / "sweep.png")
    _write_resolved(
        out,
        "sweep",
        {
            "kind": args.kind,
            "grid": grid,
            "trials": args.trials,
            "seed": seed,
            "canvas": args.canvas,
            "host_glyph": args.host_glyph or "S",
            "params": dataclasses.asdict(params),
        },
    )
    for r in rows:
        print(f"sweep {r.kind} value={r.value:g}: mean CC {r.mean_cc:.5f} (std {r.std_cc:.5f})")
    return 0


def _cmd_metrics(args) -> int:
    a = _read_object_image(args.a)
    b = _read_object_image(args.b)
    rep = report(a, b)
    if args.csv:
        path = Path(args.csv)
        new = not path.exists()
        with open(path, "a", newline="") as fh:
            w = csv.writer(fh)
            if new:
                w.writerow(["a", "b", "cc", "mse", "n_pixels"])
            w.writerow([str(args.a), str(args.b), f"{rep.cc:.10g}", f"{rep.mse:.10g}", rep.n_pixels])
    print(f"cc={rep.cc:.10g} mse={rep.mse:.10g} n={rep.n_pixels}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="holohide",
        description="Interferometric image hiding: synthesis, classical decryption, sweeps.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("synth", help="synthesize one interferogram (or a phase-shift stack)")
    sp.add_argument("--object", required=True, help="object image file (grayscale)")
    sp.add_argument("--host-glyph", help="shipped host glyph id (default S)")
    sp.add_argument("--host-image", help="host image file (overrides --host-glyph)")
    sp.add_argument("--canvas", type=int, default=256, help="working grid size (default 256)")
    sp.add_argument("--slm-scale", type=int, help="embedded object size in pixels (default canvas/2)")
    sp.add_argument("--psi-shifts", help="comma list (e.g. '0,pi/2,pi,3pi/2') to write a stack")
    sp.add_argument("--seed", type=int, help="sensor noise seed (default 0)")
    sp.add_argument("--out", help="output directory")
    _add_params_flags(sp)
    sp.set_defaults(func=_cmd_synth)

    gp = sub.add_parser("generate", help="generate a paired (interferogram, gt) corpus")
    gp.add_argument("--config", help="JSON generation config file")
    gp.add_argument("--out", help="output directory (out_dir)")
    gp.add_argument("--seed", type=int, help="dataset seed")
    gp.add_argument("--source", choices=ds.SOURCES)
    gp.add_argument("--source-path", help="IDX image file for real source data")
    gp.add_argument("--host-glyph", help="host glyph id")
    gp.add_argument("--n-total", type=int)
    gp.add_argument("--n-test", type=int)
    gp.add_argument("--crop", type=int)
    gp.add_argument("--sim-grid", type=int)
    gp.add_argument("--slm-scale", type=int)
    gp.add_argument("--write-f32", action="store_const", const=True)
    _add_params_flags(gp)
    gp.set_defaults(func=_cmd_generate)

    dp = sub.add_parser("psi-decrypt", help="classical multi-step phase-shifting decryption")
    dp.add_argument("--frames", nargs="+", required=True, help="interferogram files, shift order")
    dp.add_argument("--shifts", default="0,pi/2,pi,3pi/2", help="comma list of shifts")
    dp.add_argument("--key", help="JSON decryption key config")
    dp.add_argument("--host-glyph", help="host glyph when no key file given")
    dp.add_argument("--ground-truth", help="ground-truth image for CC/MSE reporting")
    dp.add_argument("--out", help="output directory")
    dp.set_defaults(func=_cmd_psi_decrypt)

    wp = sub.add_parser("sweep", help="robustness sweep producing CSV + plot")
    wp.add_argument("--kind", required=True, choices=SWEEP_KINDS)
    wp.add_argument("--grid", required=True, help="comma list of grid values")
    wp.add_argument("--trials", type=int, default=20)
    wp.add_argument("--seed", type=int, help="sweep seed (default 0)")
    wp.add_argument("--canvas", type=int, default=256)
    wp.add_argument("--slm-scale", type=int)
    wp.add_argument("--host-glyph", help="host glyph id (default S)")
    wp.add_argument("--no-plot", action="store_true")
    wp.add_argument("--out", help="output directory")
    _add_params_flags(wp)
    wp.set_defaults(func=_cmd_sweep)

    mp = sub.add_parser("metrics", help="CC/MSE between two image files")
    mp.add_argument("--a", required=True)
    mp.add_argument("--b", required=True)
    mp.add_argument("--csv", help="append a CSV row here")
    mp.set_defaults(func=_cmd_metrics)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except UndefinedMetricError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
