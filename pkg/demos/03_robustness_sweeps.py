"""Why classical decryption is fragile: deviation and noise sweeps.

Multi-step recovery assumes the phase shifter hits its nominal positions
and the camera is clean. Sweeping the shifter error bound and the sensor
noise level shows the decryption quality falling off, which is the case
for replacing the whole procedure with a learned single-shot reconstructor.
"""

from pathlib import Path

from holohide import HidingParams, SensorModel, plot_sweep, run_sweep, write_sweep_csv

out_dir = Path(__file__).parent / "out"
out_dir.mkdir(exist_ok=True)

params = HidingParams(sensor=SensorModel.off())

for kind, grid in [
    ("deviation", [0.0, 0.05, 0.1, 0.2]),
    ("noise", [0.0, 0.005, 0.01, 0.05]),
]:
    rows = run_sweep(kind, grid, trials=10, params=params, seed=1, sim_grid=128)
    csv_path = out_dir / f"03_{kind}.csv"
    write_sweep_csv(rows, csv_path)
    plot_sweep(csv_path, out_dir / f"03_{kind}.png")
    for r in rows:
        print(f"{kind:9s} {r.value:6g}: mean CC {r.mean_cc:.4f} (std {r.std_cc:.4f})")
    print(f"wrote {csv_path} and companion plot")
