"""Batch front-end: parameter sweeps to CSV plus machine-readable metadata.

Exit codes: 0 success, 2 configuration error, 3 accuracy failure (some sweep
point did not converge; partial results are still written with a
converged=False flag, or an identity residual exceeded its tolerance).

CSV output is byte-stable: fixed %.17g float formatting, comma separator,
header row, rows in sweep order regardless of worker completion order.  The
sidecar metadata file records the config hash, code version and unit system
(and no timestamp, so reruns of the same config are byte-identical).
"""
from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .blackbody import BlackbodyScenario, blackbody_force
from .breakdown import AccuracyError
from .config import ConfigError, RunConfig, parse_config
from .identities import run_all
from .materials import LorentzOscillator, SurfaceMedium
from .quadrature import QuadratureSpec
from .surface import SurfaceScenario, surface_force
from . import units as u


def _fmt(x: float) -> str:
    return "%.17g" % x


def _columns(mode: str, axes: list[str]) -> list[str]:
    cols = list(axes)
    if mode == "surface":
        cols += [
            "F_x_1", "F_x_2", "F_x_total", "F_x_err",
            "F_z_1", "F_z_2", "F_z_total", "F_z_err",
        ]
    else:
        cols += [
            "F_x_1", "F_x_2", "F_x_total", "F_x_err",
            "F_0_1", "F_0_2", "F_0_total", "F_0_err",
        ]
    cols += ["evaluations", "converged"]
    return cols


def _evaluate_point(config: RunConfig, point: dict):
    particle = LorentzOscillator(config.alpha0, config.omega0, config.gamma_d)
    spec = QuadratureSpec(
        rel_tol=config.rel_tol,
        abs_tol=config.abs_tol,
        max_subdivisions=config.max_subdivisions,
    )
    try:
        if config.mode == "surface":
            scenario = SurfaceScenario(
                particle, point["v"], point["z_A"], SurfaceMedium(config.n),
                config.t_atom, config.t_field,
            )
            return surface_force(scenario, spec)
        scenario = BlackbodyScenario(particle, point["v"], config.t_atom, config.t_field)
        return blackbody_force(scenario, spec)
    except AccuracyError as exc:
        return exc.breakdown


def _row(config: RunConfig, axes: list[str], point: dict, breakdown) -> list[str]:
    si = config.units == "si"
    cells = []
    for axis in axes:
        value = point[axis]
        if axis == "z_A" and si:
            value = u.length_from_natural(value)
        cells.append(_fmt(value))
    if config.mode == "surface":
        keys = (("fx", u.force_from_natural), ("fz", u.force_from_natural))
    else:
        keys = (("fx", u.force_from_natural), ("f0", u.power_from_natural))
    for key, conv in keys:
        piece = breakdown[key]
        scale = conv if si else (lambda x: x)
        cells += [
            _fmt(scale(piece.piece1)),
            _fmt(scale(piece.piece2)),
            _fmt(scale(piece.total)),
            _fmt(scale(piece.error)),
        ]
    cells.append(str(breakdown.evaluations))
    cells.append("true" if breakdown.converged else "false")
    return cells


def _run_sweep(config: RunConfig, out_dir: Path, stem: str, threads: int) -> int:
    # report every scenario axis, swept or not
    axes = ["v"] if config.mode == "blackbody" else ["v", "z_A"]
    points = list(config.points())

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda p: _evaluate_point(config, p), points))
    else:
        results = [_evaluate_point(config, p) for p in points]

    cols = _columns(config.mode, axes)
    lines = [",".join(cols)]
    notes = []
    for point, breakdown in zip(points, results):
        lines.append(",".join(_row(config, axes, point, breakdown)))
        if breakdown.note and breakdown.note not in notes:
            notes.append(breakdown.note)

    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    csv_path.write_text("\n".join(lines) + "\n")
    meta = {
        "code_version": __version__,
        "columns": cols,
        "config_sha256": hashlib.sha256(config.raw_text.encode()).hexdigest(),
        "mode": config.mode,
        "points": len(points),
        "units": config.units,
    }
    (out_dir / f"{stem}.meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")

    for note in notes:
        print(f"note: {note}", file=sys.stderr)
    print(f"wrote {csv_path}")
    if not all(r.converged for r in results):
        print("accuracy failure: some sweep points did not converge", file=sys.stderr)
        return 3
    return 0


def _run_identities(seed: int) -> int:
    failures = 0
    for result in run_all(seed=seed):
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{result.name} ({result.draws} draws): max residual "
            f"{result.max_residual:.3e}  [tol {result.tolerance:.0e}]  {status}"
        )
        failures += 0 if result.passed else 1
    return 0 if failures == 0 else 3


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="radfric", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a sweep from a config file")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--out", type=Path, default=None, help="output directory (overrides config)")
    p_run.add_argument("--threads", type=int, default=1)
    p_run.add_argument("--tolerance", type=float, default=None, help="override rel_tol")

    p_id = sub.add_parser("identities", help="run the tensor-identity residual suites")
    p_id.add_argument("--seed", type=int, default=None)

    args = parser.parse_args(argv)

    if args.command == "identities":
        from .identities import DEFAULT_SEED

        return _run_identities(args.seed if args.seed is not None else DEFAULT_SEED)

    try:
        text = args.config.read_text()
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        config = parse_config(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if config.mode == "identities":
        from .identities import DEFAULT_SEED

        return _run_identities(DEFAULT_SEED)

    if args.tolerance is not None:
        if args.tolerance <= 0:
            print("config error: --tolerance must be positive", file=sys.stderr)
            return 2
        config = dataclasses.replace(config, rel_tol=args.tolerance)

    out_dir = args.out if args.out is not None else Path(config.out)
    return _run_sweep(config, out_dir, args.config.stem, max(1, args.threads))


if __name__ == "__main__":
    raise SystemExit(main())
