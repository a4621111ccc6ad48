"""Command-line front end.

Subcommands:

  run           execute a preset or config-file experiment, write CSV + manifest
  haar-check    statistical audit of the random-unitary sampler (exit 4 on failure)
  oracle-check  pipeline vs closed-form comparison (exit 5 on deviation)
  haar-dump     dump sampled angle sets and matrices for external audit

Exit codes: 0 success, 2 configuration error, 3 numerical-failure abort,
4 statistical failure, 5 oracle deviation.  Config files are JSON or INI
(sections [experiment], [grid], [ancilla]); see README for the keys.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .dynamics import AncillaPrep
from .haar import RngStream, compose_unitary, sample_euler_angles
from .harness import ExperimentConfig, RunAbortedError, preset, preset_names, run_monte_carlo
from .reporting import format_float, write_outputs
from .validate import ORACLE_SCENARIOS, haar_check, oracle_check, uniform_phi_sampler

__all__ = ["main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ABORT = 3
EXIT_STATISTICAL = 4
EXIT_ORACLE = 5

_INT_KEYS = {"samples", "seed", "witness_restarts", "qubit_cap"}
_BOOL_KEYS = {"link_dims", "haar_prep", "re_randomize_per_round"}
_STR_KEYS = {"name", "order", "left_target", "right_target"}
_GRID_KEYS = {"dim_el", "dim_er", "rounds", "couplings", "measures"}


def _config_from_kwargs(raw: dict) -> ExperimentConfig:
    kwargs = {}
    for key, value in raw.items():
        if key in _INT_KEYS:
            kwargs[key] = int(value)
        elif key in _BOOL_KEYS:
            kwargs[key] = bool(value)
        elif key in _STR_KEYS:
            kwargs[key] = value
        elif key in ("dim_el", "dim_er", "rounds"):
            kwargs[key] = tuple(int(v) for v in value)
        elif key == "couplings":
            kwargs[key] = tuple((float(t), float(l)) for t, l in value)
        elif key == "measures":
            kwargs[key] = tuple(value)
        elif key == "ancilla_prep":
            kwargs[key] = AncillaPrep(**value)
        else:
            raise ValueError("unknown config key %r" % key)
    return ExperimentConfig(**kwargs)


def _parse_ini(path: Path) -> dict:
    import configparser

    parser = configparser.ConfigParser()
    if not parser.read(path):
        raise ValueError("cannot read config file %r" % str(path))
    raw: dict = {}
    for section in parser.sections():
        if section not in ("experiment", "grid", "ancilla"):
            raise ValueError("unknown config section %r" % section)
    for key, value in parser.items("experiment") if parser.has_section("experiment") else []:
        if key in _BOOL_KEYS:
            raw[key] = parser.getboolean("experiment", key)
        elif key == "measures":
            raw[key] = value.split()
        elif key in _INT_KEYS or key in _STR_KEYS:
            raw[key] = value
        else:
            raise ValueError("unknown config key %r in [experiment]" % key)
    for key, value in parser.items("grid") if parser.has_section("grid") else []:
        if key in ("dim_el", "dim_er", "rounds"):
            raw[key] = value.split()
        elif key == "couplings":
            pairs = []
            for token in value.split():
                parts = token.split(",")
                if len(parts) != 2:
                    raise ValueError("couplings entries must be tau,lambda pairs, got %r" % token)
                pairs.append(parts)
            raw[key] = pairs
        else:
            raise ValueError("unknown config key %r in [grid]" % key)
    if parser.has_section("ancilla"):
        prep: dict = {}
        for key, value in parser.items("ancilla"):
            if key == "kind":
                prep[key] = value
            elif key in ("theta", "phi_bloch", "rho0"):
                prep[key] = float(value)
            else:
                raise ValueError("unknown config key %r in [ancilla]" % key)
        raw["ancilla_prep"] = prep
    return raw


def _load_config(path: str) -> ExperimentConfig:
    p = Path(path)
    if not p.is_file():
        raise ValueError("config file %r does not exist" % path)
    if p.suffix.lower() == ".json":
        with open(p) as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise ValueError("JSON config must be an object of config keys")
    else:
        raw = _parse_ini(p)
    return _config_from_kwargs(raw)


def _cmd_run(args) -> int:
    if bool(args.preset) == bool(args.config):
        print("exactly one of --preset or --config is required", file=sys.stderr)
        return EXIT_CONFIG
    if args.preset:
        config = preset(args.preset)
    else:
        config = _load_config(args.config)
    if args.samples is not None:
        config = replace(config, samples=args.samples)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    out_dir = args.out or os.environ.get("COLLISIM_OUT", "results")
    try:
        result = run_monte_carlo(config, workers=args.workers)
    except RunAbortedError as exc:
        print("run aborted: %s" % exc, file=sys.stderr)
        return EXIT_ABORT
    paths = write_outputs(
        result, out_dir, args.workers, __version__, dump_samples=args.dump_samples
    )
    print(
        "%s: %d grid points, %d samples (%d failed), %.1f s"
        % (
            config.name,
            len(config.grid_points()),
            len(result.samples),
            result.failures,
            result.wall_seconds,
        )
    )
    for kind in ("aggregates", "samples", "manifest"):
        if kind in paths:
            print("wrote %s" % paths[kind])
    return EXIT_OK


def _cmd_haar_check(args) -> int:
    dims = tuple(int(d) for d in args.dims.split(","))
    if any(d < 2 for d in dims):
        print("all dims must be >= 2", file=sys.stderr)
        return EXIT_CONFIG
    if args.draws < 1000:
        print("draws must be >= 1000 for meaningful statistics", file=sys.stderr)
        return EXIT_CONFIG
    sampler = uniform_phi_sampler if args.uniform_phi else None
    report = haar_check(dims, args.draws, args.seed, sampler=sampler)
    for r in report.dims:
        print(
            "N=%d  unitarity %.3g [%s]  E|U11|^2 %.5f vs %.5f +- %.5f [%s]  KS %.4f [%s]"
            % (
                r.dim,
                r.max_unitarity_error,
                "ok" if r.unitarity_ok else "FAIL",
                r.moment_mean,
                r.moment_target,
                3.0 * r.moment_se,
                "ok" if r.moment_ok else "FAIL",
                r.ks_d,
                "ok" if r.ks_ok else "FAIL",
            )
        )
    if not report.ok:
        print("haar-check FAILED", file=sys.stderr)
        return EXIT_STATISTICAL
    print("haar-check passed")
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    if args.draws < 1:
        print("draws must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    report = oracle_check(args.draws, args.seed, corrupt=args.corrupt)
    for d in report.deviations:
        print(
            "%-32s max deviation %.3g (tol %g) [%s]"
            % (d.scenario, d.max_deviation, d.tol, "ok" if d.ok else "FAIL")
        )
    if not report.ok:
        print("oracle deviation in: %s" % ", ".join(report.failing()), file=sys.stderr)
        return EXIT_ORACLE
    print("oracle-check passed (%d draws)" % report.draws)
    return EXIT_OK


def _cmd_haar_dump(args) -> int:
    if args.dim < 2:
        print("dim must be >= 2", file=sys.stderr)
        return EXIT_CONFIG
    if args.draws < 1:
        print("draws must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    n = args.dim
    header = ["draw", "dim", "alpha"]
    pairs = [(i, j) for j in range(2, n + 1) for i in range(j - 1, 0, -1)]
    header += ["phi_%d_%d" % p for p in pairs]
    header += ["psi_%d_%d" % p for p in pairs]
    header += ["chi_%d" % j for j in range(2, n + 1)]
    header += ["u_%d_%d_%s" % (r, c, part) for r in range(n) for c in range(n) for part in ("re", "im")]
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for k in range(args.draws):
            angles = sample_euler_angles(n, RngStream(args.seed, k).generator())
            u = compose_unitary(angles)
            row = [str(k), str(n), format_float(angles.alpha)]
            row += [format_float(angles.phi[i, j]) for i, j in pairs]
            row += [format_float(angles.psi[i, j]) for i, j in pairs]
            row += [format_float(angles.chi[j]) for j in range(2, n + 1)]
            for r in range(n):
                for c in range(n):
                    row += [format_float(u[r, c].real), format_float(u[r, c].imag)]
            writer.writerow(row)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collisim",
        description="Collision-model entanglement simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment and write CSV + manifest")
    run.add_argument("--preset", help="named experiment (%s)" % ", ".join(preset_names()))
    run.add_argument("--config", help="JSON or INI experiment description")
    run.add_argument("--seed", type=int, help="override the experiment seed")
    run.add_argument("--samples", type=int, help="override the Monte Carlo sample count")
    run.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    run.add_argument("--out", help="output directory (default $COLLISIM_OUT or ./results)")
    run.add_argument(
        "--dump-samples", action="store_true", help="also write the per-sample CSV log"
    )
    run.set_defaults(func=_cmd_run)

    hc = sub.add_parser("haar-check", help="audit the random-unitary sampler")
    hc.add_argument("--dims", default="2,3,4", help="comma-separated matrix sizes")
    hc.add_argument("--draws", type=int, default=10_000)
    hc.add_argument("--seed", type=int, default=1)
    hc.add_argument(
        "--uniform-phi",
        action="store_true",
        help="negative control: swap in the wrong (uniform) phi law; the check must fail",
    )
    hc.set_defaults(func=_cmd_haar_check)

    oc = sub.add_parser("oracle-check", help="compare the pipeline against closed forms")
    oc.add_argument("--draws", type=int, default=200)
    oc.add_argument("--seed", type=int, default=3)
    oc.add_argument(
        "--corrupt",
        choices=ORACLE_SCENARIOS,
        help="negative control: perturb one scenario's pipeline output; the check must fail",
    )
    oc.set_defaults(func=_cmd_oracle_check)

    hd = sub.add_parser("haar-dump", help="dump angle sets and matrices as CSV")
    hd.add_argument("--dim", type=int, default=2)
    hd.add_argument("--draws", type=int, default=10)
    hd.add_argument("--seed", type=int, default=1)
    hd.add_argument("--out", default="-", help="output file, - for stdout")
    hd.set_defaults(func=_cmd_haar_dump)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
