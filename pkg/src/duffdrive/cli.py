"""Command line front end.

Subcommands:
    simulate   one driver/response run, trajectory CSV
    stability  critical delays of the driver wells, CSV
    slice      1-D observable scan (fixed tau or fixed coupling)
    sweep      2-D observable grid over (tau, coupling)
    transfer   delay scan at one coupling, driver-vs-response columns

Every file written via --out is paired with a ``<out>.manifest`` recording
the full parameter set; re-running the recorded argv reproduces the file
byte for byte. Exit codes: 0 success, 2 bad usage, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import shlex
import sys
import time

from . import __version__
from .kernels import BACKEND
from .models import (
    DEFAULT_ALPHA,
    DEFAULT_GAMMA,
    DEFAULT_HISTORY,
    DEFAULT_IC,
    DEFAULT_MU,
    OscillatorParams,
)
from .observables import ObservableRecord
from .simulate import simulate_pair
from .solver import DEFAULT_STEP, DEFAULT_T_FINAL, DivergenceError, SolverConfig
from .stability import critical_points
from .sweep import (
    GridRange,
    SweepGrid,
    run_slice,
    run_sweep,
    transfer_observables,
)

OBSERVABLE_HEADER = ("tau,C,A_x1,A_x2C,mean_dist,mean_dist_c0,"
                     "omega1,omega2,region,behavior,failed")
TRAJECTORY_HEADER = "t,x1,v1,x2,v2"
STABILITY_HEADER = "omega,tau_c,K,residual"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _fmt(value: float) -> str:
    return format(float(value), ".9g")


def _parse_range(text: str) -> GridRange:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"expected min:max:step, got {text!r}"
        )
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"range {text!r} has non-numeric parts"
        ) from None
    try:
        return GridRange(lo, hi, step)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two values a,b, got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"pair {text!r} has non-numeric parts"
        ) from None


def _parse_fix(text: str) -> tuple[str, float]:
    key, sep, value = text.partition("=")
    key = key.strip().lower()
    if not sep or key not in ("tau", "c", "coupling"):
        raise argparse.ArgumentTypeError(
            f"expected tau=VALUE or c=VALUE, got {text!r}"
        )
    try:
        return ("tau" if key == "tau" else "coupling", float(value))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"fixed value in {text!r} is not numeric"
        ) from None


def _add_physics_args(sp):
    sp.add_argument("--mu", type=float, default=DEFAULT_MU,
                    help="damping (default %(default)s)")
    sp.add_argument("--alpha", type=float, default=DEFAULT_ALPHA,
                    help="cubic stiffness coefficient (default %(default)s)")
    sp.add_argument("--gamma", type=float, default=DEFAULT_GAMMA,
                    help="delayed stiffness coefficient (default %(default)s)")


def _add_solver_args(sp):
    sp.add_argument("--dt", type=float, default=DEFAULT_STEP,
                    help="integration step (default %(default)s)")
    sp.add_argument("--t-final", type=float, default=DEFAULT_T_FINAL,
                    help="integration horizon (default %(default)s)")
    sp.add_argument("--history", type=_parse_pair, default=DEFAULT_HISTORY,
                    metavar="U0,V0",
                    help="constant driver history (default 1,1)")
    sp.add_argument("--ic", type=_parse_pair, default=DEFAULT_IC,
                    metavar="X0,V0",
                    help="response initial condition (default 0.5,0.5)")


def _add_output_args(sp, jobs: bool):
    sp.add_argument("--out", default=None, metavar="PATH",
                    help="output CSV path (default: stdout, no manifest)")
    if jobs:
        sp.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="worker processes for independent rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="duffdrive",
        description=("Simulate a time-delayed Duffing oscillator driving a "
                     "plain Duffing oscillator; emit plot-ready CSV."),
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="single run, trajectory CSV")
    sp.add_argument("--tau", type=float, default=1.0,
                    help="driver delay (default %(default)s)")
    sp.add_argument("--coupling", type=float, default=0.0,
                    help="coupling constant (default %(default)s)")
    _add_physics_args(sp)
    _add_solver_args(sp)
    _add_output_args(sp, jobs=False)

    sp = sub.add_parser("stability", help="critical delays of the wells")
    _add_physics_args(sp)
    _add_output_args(sp, jobs=False)

    sp = sub.add_parser("slice", help="1-D observable scan")
    sp.add_argument("--fix", type=_parse_fix, required=True, metavar="KEY=VALUE",
                    help="held parameter: tau=VALUE or c=VALUE")
    sp.add_argument("--c", type=_parse_range, default=None, metavar="MIN:MAX:STEP",
                    help="coupling range (when tau is fixed)")
    sp.add_argument("--tau", type=_parse_range, default=None, metavar="MIN:MAX:STEP",
                    help="delay range (when the coupling is fixed)")
    _add_physics_args(sp)
    _add_solver_args(sp)
    _add_output_args(sp, jobs=True)

    sp = sub.add_parser("sweep", help="2-D observable grid")
    sp.add_argument("--tau", type=_parse_range,
                    default=GridRange(0.1, 4.2, 0.05), metavar="MIN:MAX:STEP",
                    help="delay range (default 0.1:4.2:0.05)")
    sp.add_argument("--c", type=_parse_range,
                    default=GridRange(0.0, 4.0, 0.05), metavar="MIN:MAX:STEP",
                    help="coupling range (default 0:4:0.05)")
    _add_physics_args(sp)
    _add_solver_args(sp)
    _add_output_args(sp, jobs=True)

    sp = sub.add_parser("transfer", help="delay scan at one coupling")
    sp.add_argument("--coupling", type=float, default=4.0,
                    help="coupling constant (default %(default)s)")
    sp.add_argument("--tau", type=_parse_range,
                    default=GridRange(0.1, 4.2, 0.05), metavar="MIN:MAX:STEP",
                    help="delay range (default 0.1:4.2:0.05)")
    _add_physics_args(sp)
    _add_solver_args(sp)
    _add_output_args(sp, jobs=True)

    return parser


def _observable_row(r: ObservableRecord) -> str:
    def num(v):
        return "" if v is None else _fmt(v)

    def omega(v, side_ok):
        if v is None:
            return "none" if side_ok else ""
        return _fmt(v)

    driver_ok = r.a_x1 is not None
    response_ok = (not r.failed) and r.a_x2c is not None
    return ",".join([
        _fmt(r.tau), _fmt(r.coupling), num(r.a_x1), num(r.a_x2c),
        num(r.mean_dist), num(r.mean_dist_c0),
        omega(r.omega1, driver_ok), omega(r.omega2, response_ok),
        r.region, r.behavior or "", "1" if r.failed else "0",
    ])


def _emit(lines, out_path):
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)


def _write_manifest(out_path, argv, entries, n_rows, started):
    if out_path is None:
        return
    duration = time.monotonic() - started
    lines = [
        f"tool=duffdrive {__version__}",
        f"backend={BACKEND}",
        f"argv={shlex.join(argv)}",
    ]
    lines += [f"{key}={value}" for key, value in entries.items()]
    lines += [f"rows={n_rows}", f"out={out_path}",
              f"duration_s={duration:.3f}"]
    with open(str(out_path) + ".manifest", "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _common_entries(args, params, cfg):
    return {
        "command": args.command,
        "mu": _fmt(params.mu),
        "alpha": _fmt(params.alpha),
        "gamma": _fmt(params.gamma),
        "dt": _fmt(cfg.step_size),
        "t_final": _fmt(cfg.t_final),
        "history": f"{_fmt(args.history[0])},{_fmt(args.history[1])}",
        "ic": f"{_fmt(args.ic[0])},{_fmt(args.ic[1])}",
    }


def _range_text(r: GridRange) -> str:
    return f"{_fmt(r.start)}:{_fmt(r.stop)}:{_fmt(r.step)}"


def cmd_simulate(args, argv) -> int:
    started = time.monotonic()
    params = OscillatorParams(mu=args.mu, alpha=args.alpha, gamma=args.gamma,
                              tau=args.tau, coupling=args.coupling)
    cfg = SolverConfig(step_size=args.dt, t_final=args.t_final)
    pair = simulate_pair(params, cfg, history=args.history, ic=args.ic)
    traj = pair.trajectory
    lines = [TRAJECTORY_HEADER]
    h_rec = traj.h_record
    for i in range(traj.n_samples):
        row = traj.samples[i]
        lines.append(",".join([
            _fmt(i * h_rec), _fmt(row[0]), _fmt(row[1]),
            _fmt(row[2]), _fmt(row[3]),
        ]))
    _emit(lines, args.out)
    entries = _common_entries(args, params, cfg)
    entries["tau"] = _fmt(args.tau)
    entries["coupling"] = _fmt(args.coupling)
    _write_manifest(args.out, argv, entries, traj.n_samples, started)
    return EXIT_OK


def cmd_stability(args, argv) -> int:
    started = time.monotonic()
    params = OscillatorParams(mu=args.mu, alpha=args.alpha, gamma=args.gamma)
    points = critical_points(params)
    lines = [STABILITY_HEADER]
    for cp in points:
        lines.append(",".join([
            _fmt(cp.omega), _fmt(cp.tau_c), _fmt(cp.stiffness),
            _fmt(cp.residual),
        ]))
    if not points:
        print("warning: no critical points for these parameters",
              file=sys.stderr)
    _emit(lines, args.out)
    entries = {
        "command": args.command,
        "mu": _fmt(params.mu),
        "alpha": _fmt(params.alpha),
        "gamma": _fmt(params.gamma),
    }
    _write_manifest(args.out, argv, entries, len(points), started)
    return EXIT_OK


def _emit_observables(args, argv, records, entries, started) -> int:
    lines = [OBSERVABLE_HEADER]
    lines += [_observable_row(r) for r in records]
    _emit(lines, args.out)
    _write_manifest(args.out, argv, entries, len(records), started)
    return EXIT_OK


def cmd_slice(args, argv, parser) -> int:
    started = time.monotonic()
    key, value = args.fix
    if key == "tau":
        if args.c is None or args.tau is not None:
            parser.error("slice with --fix tau=... needs --c MIN:MAX:STEP")
        varying = args.c
    else:
        if args.tau is None or args.c is not None:
            parser.error("slice with --fix c=... needs --tau MIN:MAX:STEP")
        varying = args.tau
    params = OscillatorParams(mu=args.mu, alpha=args.alpha, gamma=args.gamma)
    cfg = SolverConfig(step_size=args.dt, t_final=args.t_final)
    records = run_slice(key, value, varying, cfg, params=params,
                        history=args.history, ic=args.ic, jobs=args.jobs)
    entries = _common_entries(args, params, cfg)
    entries["fix"] = f"{key}={_fmt(value)}"
    entries["range"] = _range_text(varying)
    entries["jobs"] = str(args.jobs)
    return _emit_observables(args, argv, records, entries, started)


def cmd_sweep(args, argv) -> int:
    started = time.monotonic()
    params = OscillatorParams(mu=args.mu, alpha=args.alpha, gamma=args.gamma)
    cfg = SolverConfig(step_size=args.dt, t_final=args.t_final)
    grid = SweepGrid(tau_range=args.tau, c_range=args.c, sim=cfg,
                     params=params, history=args.history, ic=args.ic)
    records = run_sweep(grid, jobs=args.jobs)
    entries = _common_entries(args, params, cfg)
    entries["tau_range"] = _range_text(args.tau)
    entries["c_range"] = _range_text(args.c)
    entries["jobs"] = str(args.jobs)
    return _emit_observables(args, argv, records, entries, started)


def cmd_transfer(args, argv) -> int:
    started = time.monotonic()
    params = OscillatorParams(mu=args.mu, alpha=args.alpha, gamma=args.gamma)
    cfg = SolverConfig(step_size=args.dt, t_final=args.t_final)
    records = transfer_observables(args.coupling, args.tau, cfg, params=params,
                                   history=args.history, ic=args.ic,
                                   jobs=args.jobs)
    entries = _common_entries(args, params, cfg)
    entries["coupling"] = _fmt(args.coupling)
    entries["tau_range"] = _range_text(args.tau)
    entries["jobs"] = str(args.jobs)
    return _emit_observables(args, argv, records, entries, started)


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "simulate":
            return cmd_simulate(args, argv)
        if args.command == "stability":
            return cmd_stability(args, argv)
        if args.command == "slice":
            return cmd_slice(args, argv, parser)
        if args.command == "sweep":
            return cmd_sweep(args, argv)
        if args.command == "transfer":
            return cmd_transfer(args, argv)
        parser.error(f"unknown command {args.command!r}")
    except DivergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
