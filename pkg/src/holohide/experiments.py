"""Robustness sweeps for the classical decryption baseline.

Each sweep measures mean/std decryption quality (correlation coefficient
against the embedded object) across a grid of one degradation variable:

``deviation``
    Phase-shifter error: frame k's shift becomes shifts[k] + bound * u_k
    with u ~ U(-1, 1), noise off.
``noise``
    Sensor Gaussian noise sigma (fraction of full scale), exact shifts.
``ratio``
    Object-arm attenuation under a fixed noisy sensor.

Trials use common random numbers: trial t reuses one object image, one
deviation direction and one noise draw across the whole grid, so the grid
column is a paired comparison and the monotone degradation shows through
with few trials.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .errors import ParameterError
from .glyphs import render_host
from .hiding import HidingParams, SensorModel, embed_on_slm, synthesize_psi_stack
from .metrics import correlation_coefficient
from .psi import FOUR_STEP_SHIFTS, DecryptionKey, decrypt
from .sources import synthetic_source

__all__ = ["SWEEP_KINDS", "SweepRow", "run_sweep", "write_sweep_csv", "read_sweep_csv", "plot_sweep"]

SWEEP_KINDS = ("deviation", "noise", "ratio")
SWEEP_CSV_COLUMNS = ("kind", "value", "mean_cc", "std_cc", "trials")


@dataclass(frozen=True)
class SweepRow:
    kind: str
    value: float
    mean_cc: float
    std_cc: float
    trials: int


def _trial_seeds(seed: int, trial: int) -> tuple[int, int]:
    state = np.random.SeedSequence([seed, trial]).generate_state(2)
    return int(state[0]), int(state[1])


def sweep_trial_cc(
    kind: str,
    value: float,
    params: HidingParams,
    *,
    seed: int,
    trial: int,
    host_id: str = "S",
    sim_grid: int = 256,
    slm_scale: int | None = None,
    style: str = "digits",
) -> float:
    """One (grid value, trial) cell: synthesize a stack, decrypt, score."""
    obj_seed, noise_seed = _trial_seeds(seed, trial)
    src = synthetic_source(style, 1, obj_seed)[0]
    gt = embed_on_slm(src, sim_grid, sim_grid // 2 if slm_scale is None else slm_scale)
    host = render_host(host_id, sim_grid).mask
    shifts = list(FOUR_STEP_SHIFTS)

    if kind == "deviation":
        p = replace(params, sensor=SensorModel.off())
        unit = np.random.default_rng(obj_seed).uniform(-1.0, 1.0, len(shifts))
        deviations = (float(value) * unit).tolist()
    elif kind == "noise":
        p = replace(params, sensor=SensorModel(float(value), 0, noise_seed))
        deviations = None
    elif kind == "ratio":
        if not 0.0 < value <= 1.0:
            raise ParameterError(f"ratio grid values must lie in (0, 1], got {value}")
        p = replace(params, object_attenuation=float(value))
        deviations = None
    else:
        raise ParameterError(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")

    stack = synthesize_psi_stack(gt, host, p, shifts, deviations, seed=noise_seed)
    key = DecryptionKey(
        host_img=host,
        host_distance=p.host_distance,
        host_attenuation=p.host_attenuation,
        object_distance=p.object_distance,
        wavelength=p.wavelength,
        pitch=p.pitch,
        method=p.method,
    )
    recon = decrypt(stack, shifts, key, object_attenuation=p.object_attenuation)
    return correlation_coefficient(recon, gt)


def run_sweep(
    kind: str,
    grid,
    trials: int,
    params: HidingParams | None = None,
    *,
    seed: int = 0,
    host_id: str = "S",
    sim_grid: int = 256,
    slm_scale: int | None = None,
    style: str = "digits",
) -> list[SweepRow]:
    grid = [float(g) for g in np.atleast_1d(grid)]
    if len(grid) == 0:
        raise ParameterError("sweep grid must be nonempty")
    if trials < 1:
        raise ParameterError(f"trials must be >= 1, got {trials}")
    params = HidingParams() if params is None else params

    rows = []
    for value in grid:
        ccs = [
            sweep_trial_cc(
                kind,
                value,
                params,
                seed=seed,
                trial=t,
                host_id=host_id,
                sim_grid=sim_grid,
                slm_scale=slm_scale,
                style=style,
            )
            for t in range(trials)
        ]
        rows.append(
            SweepRow(kind, value, float(np.mean(ccs)), float(np.std(ccs)), trials)
        )
    return rows


def write_sweep_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_CSV_COLUMNS)
        for r in rows:
            # repr gives the shortest exact round-trip decimal for floats
            w.writerow([r.kind, repr(r.value), repr(r.mean_cc), repr(r.std_cc), r.trials])


def read_sweep_csv(path) -> list[SweepRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [
            SweepRow(
                row["kind"],
                float(row["value"]),
                float(row["mean_cc"]),
                float(row["std_cc"]),
                int(row["trials"]),
            )
            for row in reader
        ]


def plot_sweep(csv_path, out_path) -> None:
    """Render the sweep CSV as an errorbar line plot (pure CSV derivation)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = read_sweep_csv(csv_path)
    if not rows:
        raise ParameterError(f"no rows in {csv_path}")
    kind = rows[0].kind
    xs = [r.value for r in rows]
    ys = [r.mean_cc for r in rows]
    es = [r.std_cc for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.errorbar(xs, ys, yerr=es, marker="o", capsize=3)
    ax.set_xlabel(
        {
            "deviation": "phase-shift deviation bound (rad)",
            "noise": "sensor noise sigma (fraction of full scale)",
            "ratio": "object-arm attenuation",
        }.get(kind, kind)
    )
    ax.set_ylabel("decryption CC")
    ax.set_title(f"{kind} sweep ({rows[0].trials} trials/point)")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(out_path, dpi=120)
    plt.close(fig)
