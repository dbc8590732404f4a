"""Command-line front end.

Subcommands:
  solve       one matching record (csv or json)
  sweep       R/T table along a V or E grid (csv)
  trajectory  single path through the step (csv or svg)
  fan         family of paths, one per integration constant (csv or svg)
  field       velocity and density profile over z (csv or svg)
  check       seeded invariant suite

Physics flags: --mass with --energy or --momentum pick the incident wave;
--height plus --direction pick the step.  --amp-mod/--phase replace the
step by a uniform-medium fixture with a prescribed reflected amplitude
(trajectory/fan/field only).  In the Klein zone the transmitted-momentum
sign is a real convention: the default is group-velocity (printed notice);
pass --convention momentum for the textbook paradox.

Exit codes: 0 ok, 2 argument or domain error, 3 numeric non-convergence,
4 I/O failure.  All emission is byte-deterministic for identical
invocations; SVG is refused on a terminal stdout.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import bohm, scattering, selfcheck
from .errors import ConvergenceError, DomainError
from .output import Table, write_csv, write_json_record, write_svg
from .scattering import StepProblem

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


def _add_physics_args(sub: argparse.ArgumentParser, fixture: bool) -> None:
    sub.add_argument("--mass", type=float, required=True, help="rest mass m > 0")
    grp = sub.add_mutually_exclusive_group()
    grp.add_argument("--energy", type=float, help="total energy E > m")
    grp.add_argument("--momentum", type=float, help="incident momentum k > 0")
    sub.add_argument(
        "--height", type=float, default=None, help="step magnitude V >= 0 (default 0)"
    )
    sub.add_argument("--direction", choices=["down", "up"], default="down")
    sub.add_argument(
        "--convention",
        choices=["group-velocity", "momentum"],
        default=None,
        help="transmitted-momentum sign in the Klein zone "
        "(default: group-velocity, with a notice)",
    )
    if fixture:
        sub.add_argument(
            "--amp-mod",
            type=float,
            default=None,
            help="reflected modulus |A| of a uniform-medium fixture (no step)",
        )
        sub.add_argument(
            "--phase", type=float, default=0.0, help="reflected phase phi (fixture)"
        )


def _add_output_args(sub: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--format", choices=list(formats), default="csv")
    if "svg" in formats:
        sub.add_argument("--canvas-width", type=float, default=800.0)
        sub.add_argument("--canvas-height", type=float, default=600.0)


def _make_problem(args) -> StepProblem:
    convention = args.convention or "group-velocity"
    height = 0.0 if args.height is None else args.height
    if args.energy is not None:
        p = StepProblem.from_energy(
            args.mass, args.energy, height, args.direction, convention
        )
    elif args.momentum is not None:
        p = StepProblem.from_momentum(
            args.mass, args.momentum, height, args.direction, convention
        )
    else:
        raise DomainError("one of --energy or --momentum is required")
    if args.convention is None and scattering.classify_regime(p) == "klein":
        print(
            "note: Klein zone (V > E + m); using the group-velocity convention. "
            "Pass --convention momentum for the textbook paradox.",
            file=sys.stderr,
        )
    return p


def _make_state(args):
    """A ScatterSolution, or a PlaneWaveSuperposition when --amp-mod given."""
    if getattr(args, "amp_mod", None) is not None:
        if args.height is not None:
            raise DomainError("--amp-mod replaces the step; drop --height")
        if args.momentum is not None:
            k = args.momentum
        elif args.energy is not None:
            if args.energy <= args.mass:
                raise DomainError("energy must exceed mass")
            k = math.sqrt(args.energy**2 - args.mass**2)
        else:
            raise DomainError("--amp-mod needs --momentum or --energy")
        return bohm.PlaneWaveSuperposition(args.mass, k, args.amp_mod, args.phase)
    return scattering.solve(_make_problem(args))


def _sink(args):
    if args.out is not None:
        return args.out
    return getattr(sys.stdout, "buffer", sys.stdout)


def _emit_svg(args, series) -> int:
    if args.out is None and sys.stdout.isatty():
        raise DomainError("refusing to write SVG to a terminal; use --out")
    write_svg(series, _sink(args), args.canvas_width, args.canvas_height)
    return EXIT_OK


def _cmd_solve(args) -> int:
    s = scattering.solve(_make_problem(args))
    record = {
        "m": s.m,
        "E": s.E,
        "k": s.k,
        "U": s.U,
        "regime": s.regime,
        "convention": s.convention,
        "gamma": s.gamma,
        "A_re": s.A.real,
        "A_im": s.A.imag,
        "C_re": s.C.real,
        "C_im": s.C.imag,
        "R": s.R,
        "T": s.T,
    }
    if args.format == "json":
        write_json_record(record, _sink(args))
    else:
        table = Table(columns=list(record), rows=[tuple(record.values())])
        write_csv(table, _sink(args))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    height = 0.0 if args.height is None else args.height
    convention = args.convention or "group-velocity"
    if args.axis == "V":
        if args.energy is None and args.momentum is None:
            raise DomainError("sweep over V needs --energy or --momentum")
        if args.energy is not None:
            template = StepProblem.from_energy(
                args.mass, args.energy, 0.0, args.direction, convention
            )
        else:
            template = StepProblem.from_momentum(
                args.mass, args.momentum, 0.0, args.direction, convention
            )
    else:
        # E is the axis; the template energy is a placeholder, never read.
        template = StepProblem.from_energy(
            args.mass, 2.0 * args.mass, height, args.direction, convention
        )
    rows = scattering.sweep(template, args.axis, args.lo, args.hi, args.n, args.scale)
    table = Table(
        columns=[args.axis, "gamma", "R", "T", "boundary"],
        rows=[(r.value, r.gamma, r.R, r.T, r.boundary) for r in rows],
    )
    write_csv(table, _sink(args))
    return EXIT_OK


def _trajectory_of(args, state) -> bohm.Trajectory:
    if args.method == "implicit":
        if args.z0 is not None:
            raise DomainError("--z0 applies to the rk4 method only")
        return bohm.trajectory_implicit(
            state, c=args.offset, t0=args.t0, t1=args.t_end, n=args.samples
        )
    return bohm.trajectory_rk4(
        state,
        z0=args.z0,
        c=args.offset,
        t0=args.t0,
        t1=args.t_end,
        n=args.samples,
        dt=args.dt,
    )


def _cmd_trajectory(args) -> int:
    traj = _trajectory_of(args, _make_state(args))
    if args.format == "svg":
        return _emit_svg(args, [(traj.z, traj.t)])
    table = Table(columns=["t", "z", "v"], rows=list(zip(traj.t, traj.z, traj.v)))
    write_csv(table, _sink(args))
    return EXIT_OK


def _parse_offsets(args) -> list[float]:
    if args.offsets is not None:
        try:
            return [float(tok) for tok in args.offsets.split(",") if tok.strip()]
        except ValueError as exc:
            raise DomainError(f"bad --offsets list: {exc}") from exc
    if args.offset_count is not None:
        if args.offset_count < 1:
            raise DomainError("--offset-count must be >= 1")
        return list(np.linspace(args.offset_start, args.offset_stop, args.offset_count))
    raise DomainError("fan needs --offsets or --offset-start/--offset-stop/--offset-count")


def _cmd_fan(args) -> int:
    state = _make_state(args)
    fan = bohm.trajectory_fan(
        state,
        _parse_offsets(args),
        t0=args.t0,
        t1=args.t_end,
        n=args.samples,
        method=args.method,
        dt=args.dt,
    )
    if args.format == "svg":
        return _emit_svg(args, [(traj.z, traj.t) for traj in fan])
    rows = []
    for traj in fan:
        rows.extend(
            (traj.offset, t, z, v) for t, z, v in zip(traj.t, traj.z, traj.v)
        )
    table = Table(columns=["offset", "t", "z", "v"], rows=rows)
    write_csv(table, _sink(args))
    return EXIT_OK


def _cmd_field(args) -> int:
    state = _make_state(args)
    if not (args.z_max > args.z_min):
        raise DomainError("need --z-max > --z-min")
    if args.samples < 2:
        raise DomainError("need at least 2 samples")
    zs = np.linspace(args.z_min, args.z_max, args.samples)
    vs = np.array([bohm.velocity(state, float(z)) for z in zs])
    if args.format == "svg":
        return _emit_svg(args, [(zs, vs)])
    rows = [
        (float(z), float(v), bohm.superposition_density(state, float(z)))
        for z, v in zip(zs, vs)
    ]
    table = Table(columns=["z", "v", "density"], rows=rows)
    write_csv(table, _sink(args))
    return EXIT_OK


def _cmd_check(args) -> int:
    results = selfcheck.run_all(seed=args.seed)
    ok = selfcheck.report(results, sys.stdout.write)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracstep",
        description="Relativistic step scattering and causal trajectories "
        "(natural units, hbar = c = 1).",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sub = subs.add_parser("solve", help="amplitudes and coefficients for one step")
    _add_physics_args(sub, fixture=False)
    _add_output_args(sub, ("csv", "json"))
    sub.set_defaults(handler=_cmd_solve)

    sub = subs.add_parser("sweep", help="R/T over a V or E grid")
    _add_physics_args(sub, fixture=False)
    sub.add_argument("--axis", choices=["V", "E"], default="V")
    sub.add_argument("--lo", type=float, required=True)
    sub.add_argument("--hi", type=float, required=True)
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--scale", choices=["linear", "log"], default="linear")
    _add_output_args(sub, ("csv",))
    sub.set_defaults(handler=_cmd_sweep)

    for name, help_text in (
        ("trajectory", "one path through the step"),
        ("fan", "family of paths over integration constants"),
    ):
        sub = subs.add_parser(name, help=help_text)
        _add_physics_args(sub, fixture=True)
        sub.add_argument("--method", choices=["implicit", "rk4"], default="implicit")
        sub.add_argument("--t0", type=float, default=0.0)
        sub.add_argument("--t-end", type=float, required=True)
        sub.add_argument("--samples", type=int, default=100)
        sub.add_argument("--dt", type=float, default=bohm.DEFAULT_DT)
        if name == "trajectory":
            sub.add_argument("--offset", type=float, default=0.0,
                             help="integration constant c")
            sub.add_argument("--z0", type=float, default=None,
                             help="start position (rk4; default: anchor at the orbit)")
            sub.set_defaults(handler=_cmd_trajectory)
        else:
            sub.add_argument("--offsets", default=None,
                             help="comma-separated integration constants "
                             "(write --offsets=-2,0,2 for negative values)")
            sub.add_argument("--offset-start", type=float, default=None)
            sub.add_argument("--offset-stop", type=float, default=None)
            sub.add_argument("--offset-count", type=int, default=None)
            sub.set_defaults(handler=_cmd_fan)
        _add_output_args(sub, ("csv", "svg"))

    sub = subs.add_parser("field", help="velocity and density profile over z")
    _add_physics_args(sub, fixture=True)
    sub.add_argument("--z-min", type=float, required=True)
    sub.add_argument("--z-max", type=float, required=True)
    sub.add_argument("--samples", type=int, default=200)
    _add_output_args(sub, ("csv", "svg"))
    sub.set_defaults(handler=_cmd_field)

    sub = subs.add_parser("check", help="run the seeded invariant suite")
    sub.add_argument("--seed", type=int, default=42)
    sub.set_defaults(handler=_cmd_check)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_DOMAIN
    try:
        return args.handler(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
