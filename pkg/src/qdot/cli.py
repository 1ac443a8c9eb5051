"""Command-line entry point ``qdot``.

Exit codes: 0 success, 1 usage or configuration error, 2 physics-invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import presets
from .config import ConfigError, load_config
from .errors import InvalidParameterError, InvariantViolation
from .io import quadrant_boundaries, summarize, write_csv, write_polylines
from .model import evaluate
from .observables import invariant_failures
from .sweep import SweepPointError, classify, region_disjointness, sweep, zero_contour
from .validation import FAULTS, run_validation

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS = 0, 1, 2


class UsageError(Exception):
    pass


def _print_summary(summary: dict, out) -> None:
    for key, value in summary.items():
        print(f"{key:<24} {value}", file=out)


def cmd_point(args, out) -> int:
    config = load_config(args.config)
    if config.grid is not None:
        raise UsageError("point takes a configuration without a grid block; use 'qdot sweep'")
    op = config.to_operating_point()
    report = evaluate(config.to_device(), op)
    for key, value in report.currents().items():
        print(f"{key:<18} {value!r}", file=out)
    for name, value in zip(("p00", "p10", "p01", "p11"), report.p):
        print(f"{name:<18} {value!r}", file=out)
    for key in ("residual_charge", "residual_energy", "residual_firstlaw"):
        print(f"{key:<18} {getattr(report, key)!r}", file=out)
    failures = invariant_failures(report)
    try:
        flags = classify(report, op.dT, op.dV)
    except InvariantViolation as exc:
        failures.append(str(exc))
    else:
        print(f"{'inverse_particle':<18} {int(flags.inverse_particle)}", file=out)
        print(f"{'inverse_energy':<18} {int(flags.inverse_energy)}", file=out)
    if failures:
        print("INVARIANT VIOLATION: " + "; ".join(failures), file=sys.stderr)
        return EXIT_PHYSICS
    return EXIT_OK


def _open_output(path):
    try:
        return open(path, "w", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from exc


def cmd_sweep(args, out) -> int:
    config = load_config(args.config)
    grid = config.to_grid()
    if grid is None:
        raise UsageError("sweep needs a grid block in the configuration")
    path = args.out or config.output.path
    if path is None:
        raise UsageError("no output path: give --out or output.path")
    with _open_output(path) as fh:
        result = sweep(grid, workers=args.threads)
        write_csv(result, fh, config.output.precision)
    _print_summary(summarize(result), out)
    return EXIT_OK


def _parse_sets(pairs):
    overrides = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise UsageError(f"--set expects key=value, got {pair!r}")
        overrides[key] = value
    return overrides


def cmd_figure(args, out) -> int:
    preset = presets.figure_config(args.name, _parse_sets(args.set))
    config = preset.config
    os.makedirs(args.out, exist_ok=True)
    csv_path = os.path.join(args.out, f"{preset.name}.csv")
    with _open_output(csv_path) as fh:
        result = sweep(config.to_grid(), workers=args.threads)
        write_csv(result, fh, config.output.precision)
    summary = summarize(result)
    if result.grid.names == ("dT", "dV"):
        regions = region_disjointness(result)
        summary["inverse_particle_bbox"] = regions.particle_bbox
        summary["inverse_energy_bbox"] = regions.energy_bbox
    if preset.contour is not None:
        lines = zero_contour(result, preset.contour)
        with _open_output(os.path.join(args.out, f"{preset.name}_contour.json")) as fh:
            write_polylines(lines, fh)
        with _open_output(os.path.join(args.out, f"{preset.name}_quadrants.json")) as fh:
            json.dump(quadrant_boundaries(result), fh)
            fh.write("\n")
        summary["contour_polylines"] = len(lines)
    print(f"wrote {csv_path}", file=out)
    _print_summary(summary, out)
    return EXIT_OK


def cmd_validate(args, out) -> int:
    report = run_validation(seed=args.seed, trials=args.trials, fault=args.inject_fault)
    print(report.summary(), file=out)
    return EXIT_OK if report.passed else EXIT_PHYSICS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate a single operating point")
    p.add_argument("--config", required=True, help="JSON run configuration")
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="evaluate a parameter grid and write CSV")
    p.add_argument("--config", required=True, help="JSON run configuration with a grid")
    p.add_argument("--out", help="CSV path (default: output.path from the config)")
    p.add_argument("--threads", type=int, default=1, help="worker processes (output is identical)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("figure", help="run a figure preset")
    p.add_argument("name", metavar="NAME", help=", ".join(presets.FIGURES))
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a preset value; repeatable")
    p.add_argument("--threads", type=int, default=1, help="worker processes (output is identical)")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("validate", help="run the randomised invariant suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--inject-fault", choices=FAULTS, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        print(f"INVARIANT VIOLATION: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (ConfigError, UsageError, InvalidParameterError, SweepPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
