"""Command-line front end.

Subcommands:

    verify        run every verification suite and write the JSON report
    evolve        numeric-vs-analytic field dumps plus an error-vs-time series
    trajectories  tracer paths and a per-tracer summary
    hydrogen      hydrogen 1s picture report

Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error. The COHERENT_TOP_OUT environment variable overrides the
--out flag and the out_dir config key.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .analytic import classical_trajectory, sample_coherent_state
from .config import ConfigError, RunConfig, build_config, load_config_file
from .currents import picture_velocity, velocity_field
from .evolve import run_state_comparison
from .flow import comoving_diagnostics, integrate_tracer
from .hydrogen import hydrogen_report
from .reporting import write_csv, write_field_csv, write_json, save_report
from .suite import run_verification

__all__ = ["main", "build_parser"]


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected X,Y but got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected numbers in {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON configuration file")
    common.add_argument("--out", metavar="DIR", help="output directory (default 'out')")
    common.add_argument("--grid-n", type=int, dest="grid_n", metavar="N", help="grid nodes per axis")
    common.add_argument("--dt", type=float, metavar="DT", help="split-step time step")
    common.add_argument("--periods", type=float, metavar="P", help="run length in oscillator periods")
    common.add_argument(
        "--spin", type=int, choices=(1, -1), metavar="{+1,-1}", help="spin orientation along the axis"
    )
    common.add_argument("--xi0", type=_parse_pair, metavar="X,Y", help="initial center displacement")
    common.add_argument("--v0", type=_parse_pair, metavar="X,Y", help="initial center velocity")
    common.add_argument(
        "--seed-points", type=int, dest="seed_points", metavar="K", help="number of tracer seeds"
    )

    parser = argparse.ArgumentParser(
        prog="coherent-top",
        description="Verification lab for the spinning-top picture of 2D oscillator coherent states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run all verification suites")
    sub.add_parser("evolve", parents=[common], help="write numeric-vs-analytic comparison files")
    sub.add_parser("trajectories", parents=[common], help="write tracer path files")
    sub.add_parser("hydrogen", parents=[common], help="write the hydrogen picture report")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    file_data = load_config_file(args.config) if args.config else None
    overrides: dict[str, Any] = {}
    if args.grid_n is not None:
        overrides["grid_n"] = args.grid_n
    if args.dt is not None:
        overrides["dt"] = args.dt
    if args.periods is not None:
        overrides["periods"] = args.periods
    if args.spin is not None:
        overrides["spin_sign"] = args.spin
    if args.xi0 is not None:
        overrides["xi0"] = list(args.xi0)
    if args.v0 is not None:
        overrides["v0"] = list(args.v0)
    if args.seed_points is not None:
        overrides["tracer_seed_points"] = args.seed_points
    if args.out is not None:
        overrides["out_dir"] = args.out
    env_out = os.environ.get("COHERENT_TOP_OUT")
    if env_out:
        overrides["out_dir"] = env_out
    return build_config(file_data, overrides)


def _out_dir(cfg: RunConfig) -> Path:
    path = Path(cfg.out_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_verify(cfg: RunConfig) -> int:
    out = _out_dir(cfg)
    report = run_verification(cfg)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"[{status}] {check.name}: residual {check.residual:.3e} (tolerance {check.tolerance:.1e})")
    save_report(out / "verify_report.json", report)
    passed = sum(c.passed for c in report.checks)
    print(f"{passed}/{len(report.checks)} checks passed; report written to {out / 'verify_report.json'}")
    return 0 if report.all_passed else 1


def _field_columns(grid, values: np.ndarray, vx: np.ndarray, vy: np.ndarray):
    X, Y = grid.mesh
    rho = np.abs(values) ** 2
    phase = np.angle(values)
    return [X, Y, rho, phase, vx, vy]


FIELD_HEADER = ["x", "y", "rho", "phase", "vx", "vy"]


def cmd_evolve(cfg: RunConfig) -> int:
    out = _out_dir(cfg)
    spec = cfg.state_spec()
    ecfg = cfg.evolve_config()
    grid = ecfg.grid
    error_steps = sorted(set(np.linspace(0, ecfg.steps, cfg.error_samples).round().astype(int).tolist()))
    snapshot_steps = sorted(
        set(np.linspace(0, ecfg.steps, cfg.snapshots + 1)[1:].round().astype(int).tolist())
    )
    comparison = run_state_comparison(spec, ecfg, error_steps, snapshot_steps)

    write_csv(
        out / "evolve_errors.csv",
        ["step", "time", "state_error", "energy"],
        [
            [int(s), float(t), float(e), float(en)]
            for s, t, e, en in zip(
                comparison.sample_steps, comparison.times, comparison.errors, comparison.energies
            )
        ],
    )

    mid_row = grid.n // 2  # slice along y = 0
    for step in snapshot_steps:
        t = step * ecfg.dt
        tag = f"{step:07d}"
        numeric = type(comparison.final_state)(grid=grid, values=comparison.snapshots[step])
        analytic = sample_coherent_state(spec, grid, t)

        num_vx, num_vy, _ = picture_velocity(numeric, ecfg.params)
        v_exact = velocity_field(spec, grid.points, t)
        for label, field, vx, vy in (
            ("numeric", numeric, num_vx, num_vy),
            ("analytic", analytic, v_exact[..., 0], v_exact[..., 1]),
        ):
            cols = _field_columns(grid, field.values, vx, vy)
            write_field_csv(out / f"evolve_{label}_full_{tag}.csv", FIELD_HEADER, cols)
            write_field_csv(
                out / f"evolve_{label}_slice_{tag}.csv",
                FIELD_HEADER,
                [c[mid_row, :] for c in cols],
            )
    print(
        f"evolve: {len(snapshot_steps)} snapshot(s), final state error "
        f"{comparison.errors[-1]:.6e}; files written to {out}"
    )
    return 0


def cmd_trajectories(cfg: RunConfig) -> int:
    if cfg.periods < 1.0:
        raise ConfigError("trajectories requires periods >= 1 (diagnostics span one full period)")
    out = _out_dir(cfg)
    spec = cfg.state_spec()
    p = spec.params
    span = cfg.periods * p.period
    dt = cfg.resolved_tracer_dt()
    seeds = cfg.resolved_tracer_seeds()

    summary_rows = []
    for i, seed in enumerate(seeds):
        path = integrate_tracer(spec, seed, 0.0, span, dt)
        offsets = path.comoving_offsets()
        radii = np.hypot(offsets[:, 0], offsets[:, 1])
        angles = np.unwrap(np.arctan2(offsets[:, 1], offsets[:, 0]))
        centers = path.positions - offsets
        write_field_csv(
            out / f"tracer_{i:02d}.csv",
            ["t", "x", "y", "xi_x", "xi_y", "radius", "angle"],
            [
                path.times,
                path.positions[:, 0],
                path.positions[:, 1],
                centers[:, 0],
                centers[:, 1],
                radii,
                angles,
            ],
        )
        diag = comoving_diagnostics(path)
        status = "degenerate center-line" if diag.degenerate else "ok"
        summary_rows.append(
            [
                i,
                float(seed[0]),
                float(seed[1]),
                float(diag.radius_drift),
                float(diag.angular_rate) if not diag.degenerate else math.nan,
                diag.direction,
                status,
            ]
        )
    write_csv(
        out / "tracer_summary.csv",
        ["tracer", "x0", "y0", "radius_drift", "angular_rate", "direction", "status"],
        summary_rows,
    )
    print(f"trajectories: {len(seeds)} tracer(s) written to {out}")
    return 0


def cmd_hydrogen(cfg: RunConfig) -> int:
    out = _out_dir(cfg)
    report = hydrogen_report(cfg.hydrogen_params())
    write_json(out / "hydrogen_report.json", report)
    print(
        "hydrogen: product/hbar = "
        f"{report['product_over_hbar']:.8f} (target {report['product_over_hbar_target']:.8f}), "
        f"energy mismatch = {report['energy_mismatch']}; report written to {out / 'hydrogen_report.json'}"
    )
    return 0


_COMMANDS = {
    "verify": cmd_verify,
    "evolve": cmd_evolve,
    "trajectories": cmd_trajectories,
    "hydrogen": cmd_hydrogen,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
