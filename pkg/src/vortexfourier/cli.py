"""Command-line entry points.

Subcommands: simulate, eval-grid, eval-points, tube, diag.  On failure every
command prints a single line  `error: <reason>`  to stderr and exits nonzero.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import fields, figures
from .fourier import set_fft_workers
from .gpe import energy_terms, mass, simulate, snapshot_spectral, mirror_extend
from .fourier import PhysicalField
from .nufft import NufftParams, NufftPlan
from .rectilinear import eval_rectilinear
from .runconfig import RunManifest, load_config, write_manifest
from .snapshots import read_snapshot, write_snapshot
from .tube import tube_eval
from .vortex import initial_field, pade_coefficients

SNAPSHOT_PATTERN = "snap_{:04d}.sfs"


def _nufft_params(args) -> NufftParams | None:
    if getattr(args, "accuracy", None) is None:
        return None
    return NufftParams.for_accuracy(args.accuracy)


def cmd_simulate(args) -> int:
    setup = load_config(args.config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    profile = pade_coefficients() if setup.vortices else None
    initial = initial_field(setup.config.domain, setup.config.grid, list(setup.vortices), profile)

    names: list[str] = []

    def on_snapshot(snap, row):
        name = SNAPSHOT_PATTERN.format(len(names))
        write_snapshot(out / name, snap)
        names.append(name)
        print(
            f"t = {row[0]:9.4f}  mass = {row[1]:.12e}  energy = {row[4]:.12e}",
            flush=True,
        )

    result = simulate(setup.config, initial, on_snapshot=on_snapshot)

    header = ",".join(("time", "mass", "kinetic", "interaction", "total"))
    np.savetxt(out / "diagnostics.csv", result.diagnostics, delimiter=",", header=header, comments="")
    write_manifest(out / "manifest.cfg", RunManifest(setup, tuple(names)))
    if not args.no_figures:
        figures.save_diagnostics_figure(result.diagnostics, out / "diagnostics.png")

    d0, d1 = result.diagnostics[0], result.diagnostics[-1]
    drift = abs(d1[1] / d0[1] - 1.0)
    print(f"finished: {len(names)} snapshots in {out}")
    print(f"mass drift {drift:.3e}, energy {d0[4]:.10e} -> {d1[4]:.10e}")
    return 0


def _parse_grid(tokens):
    kind = tokens[0]
    if kind == "file":
        if len(tokens) != 2:
            raise ValueError("grid spec: file needs exactly one path")
        rows = Path(tokens[1]).read_text().strip().splitlines()
        if len(rows) != 3:
            raise ValueError("grid file needs three lines of coordinates")
        return [np.array([float(v) for v in row.split()]) for row in rows]
    if kind == "equispaced":
        vals = [float(t) for t in tokens[1:]]
        if len(vals) != 9:
            raise ValueError("grid spec: equispaced M1 M2 M3 a1 b1 a2 b2 a3 b3")
        return fields.equispaced_axes([int(v) for v in vals[:3]], vals[3:])
    if kind == "clustered":
        vals = [float(t) for t in tokens[1:]]
        if len(vals) not in (9, 10):
            raise ValueError("grid spec: clustered M1 M2 M3 a1 b1 a2 b2 a3 b3 [strength]")
        strength = vals[9] if len(vals) == 10 else 1.0
        return fields.clustered_axes([int(v) for v in vals[:3]], vals[3:9], strength)
    raise ValueError(f"unknown grid kind {kind!r}; use equispaced, clustered or file")


def cmd_eval_grid(args) -> int:
    snap = read_snapshot(args.snapshot)
    spec = snapshot_spectral(snap)
    coords = _parse_grid(args.grid)
    values = eval_rectilinear(spec, coords)
    density = values.real**2 + values.imag**2
    written = fields.write_field(args.out, coords, values, density, time=snap.time)
    if args.vtk:
        vtk_path = Path(args.out).with_suffix(".vtk")
        fields.write_vtk_rectilinear(vtk_path, coords, {"density": density})
        written.append(vtk_path)
    if not args.no_figures:
        fig_path = Path(args.out).with_suffix(".slice.png")
        figures.save_slice_figure(coords, density, fig_path, time=snap.time)
        written.append(fig_path)
    print("wrote " + ", ".join(str(p) for p in written))
    return 0


def cmd_eval_points(args) -> int:
    snap = read_snapshot(args.snapshot)
    spec = snapshot_spectral(snap)
    cols = fields.read_points_csv(args.points)
    for need in ("x1", "x2", "x3"):
        if need not in cols:
            raise ValueError(f"points file lacks column {need!r}")
    pts = np.stack([cols["x1"], cols["x2"], cols["x3"]], axis=1)
    if pts.shape[0]:
        values = NufftPlan(spec, _nufft_params(args)).evaluate(pts)
    else:
        values = np.empty(0, dtype=complex)
    density = values.real**2 + values.imag**2
    fields.write_points_csv(
        args.out, pts, {"re": values.real, "im": values.imag, "rho": density}
    )
    print(f"wrote {args.out} ({pts.shape[0]} points)")
    return 0


def cmd_tube(args) -> int:
    snap = read_snapshot(args.snapshot)
    cloud = tube_eval(snap, args.rhobar, final_filter=args.filter, params=_nufft_params(args))
    fields.write_points_csv(
        args.out,
        cloud.points,
        {"rho": cloud.density, "level": cloud.level.astype(float)},
    )
    print(f"wrote {args.out} ({len(cloud)} points)")
    if not args.no_figures:
        fig_path = Path(args.out).with_suffix(".png")
        figures.save_cloud_figure(cloud.points, cloud.density, fig_path)
        print(f"wrote {fig_path}")
    return 0


def cmd_diag(args) -> int:
    snap = read_snapshot(args.snapshot)
    comp = mirror_extend(PhysicalField(snap.domain, snap.values), snap.mirror)
    kinetic, interaction = energy_terms(comp)
    m = mass(comp)
    print(f"time         = {snap.time!r}")
    print(f"physical box = {list(snap.domain.a)} .. {list(snap.domain.b)}")
    print(f"grid         = {snap.values.shape}, mirror = {snap.mirror}")
    print(f"mass         = {m!r}")
    print(f"kinetic      = {kinetic!r}")
    print(f"interaction  = {interaction!r}")
    print(f"total energy = {kinetic + interaction!r}")
    if args.out:
        header = ",".join(("time", "mass", "kinetic", "interaction", "total"))
        row = np.array([[snap.time, m, kinetic, interaction, kinetic + interaction]])
        np.savetxt(args.out, row, delimiter=",", header=header, comments="")
        print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vortexfourier",
        description="Spectral field evaluation and vortex dynamics on a periodic box",
    )
    parser.add_argument("--threads", type=int, default=None, help="FFT worker count")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the splitting solver from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("eval-grid", help="evaluate a snapshot on a rectilinear grid")
    p.add_argument("--snapshot", required=True)
    p.add_argument(
        "--grid",
        required=True,
        nargs="+",
        help="equispaced M1 M2 M3 a1 b1 a2 b2 a3 b3 | clustered ... [strength] | file PATH",
    )
    p.add_argument("--out", required=True, help="output path prefix")
    p.add_argument("--vtk", action="store_true", help="also write a legacy VTK file")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_eval_grid)

    p = sub.add_parser("eval-points", help="evaluate a snapshot at scattered points")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--points", required=True, help="CSV with x1,x2,x3 columns")
    p.add_argument("--out", required=True)
    p.add_argument("--accuracy", type=float, default=None, help="target relative accuracy")
    p.set_defaults(func=cmd_eval_points)

    p = sub.add_parser("tube", help="extract a refined low-density point cloud")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--rhobar", required=True, nargs="+", type=float, help="one threshold per level")
    p.add_argument("--filter", type=float, default=None, help="final density filter")
    p.add_argument("--out", required=True)
    p.add_argument("--accuracy", type=float, default=None)
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_tube)

    p = sub.add_parser("diag", help="print mass and energy of a snapshot")
    p.add_argument("--snapshot", required=True)
    p.add_argument("--out", default=None, help="optional CSV output")
    p.set_defaults(func=cmd_diag)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None:
        set_fft_workers(args.threads)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
