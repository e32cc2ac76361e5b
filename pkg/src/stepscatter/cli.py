"""Command-line interface.

Three subcommands, all emitting CSV on stdout unless --output is given:

  stepscatter potential   tabulate V(x) and the stretched coordinate z
  stepscatter sweep       tabulate T, R and the abrupt-step T against
                          energy or against the smoothing width
  stepscatter verify      run the built-in verification battery

Potential parameters come from built-in defaults, overridden by a
config file (--config, `key = value` lines), overridden by flags.
"""
import argparse
import contextlib
import math
import sys
from dataclasses import replace

import numpy as np

from .analytic import transmission
from .errors import StepScatterError
from .model import BarrierParams, potential, z_of_x
from .oracle import richardson_T
from .verify import run_checks

__all__ = ["main"]

_PHYS_KEYS = ("v0", "v1", "x0", "sigma", "mass", "hbar")
_CONFIG_KEYS = _PHYS_KEYS + ("energy",)
_DEFAULTS = {"v0": 0.0, "v1": 1.0, "x0": 0.0, "sigma": -1.0, "mass": 1.0, "hbar": 1.0}

_PHYS_HELP = {
    "v0": "baseline potential level (default 0)",
    "v1": "step height; the far side sits at v0 + v1 (default 1)",
    "x0": "center of the step (default 0)",
    "sigma": "smoothing width; sign selects which side is raised (default -1)",
    "mass": "particle mass (default 1)",
    "hbar": "reduced Planck constant (default 1)",
}


def _fmt(v):
    return f"{float(v):.17g}"


def _read_config(path):
    """Parse a `key = value` config file; '#' starts a comment."""
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, text = line.partition("=")
            key = key.strip().lower()
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            if key not in _CONFIG_KEYS:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = float(text.strip())
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad number for {key!r}") from None
    return values


def _resolve_params(args, parser):
    """Merge defaults, config file, and flags into BarrierParams.

    Returns (params, config_energy); config_energy is None unless the
    config file set one.
    """
    merged = dict(_DEFAULTS)
    config = {}
    if args.config is not None:
        try:
            config = _read_config(args.config)
        except OSError as exc:
            parser.error(f"cannot read config file: {exc}")
        except ValueError as exc:
            parser.error(str(exc))
    for key in _PHYS_KEYS:
        if key in config:
            merged[key] = config[key]
        flag = getattr(args, key)
        if flag is not None:
            merged[key] = flag
    try:
        p = BarrierParams(**merged)
    except StepScatterError as exc:
        parser.error(str(exc))
    return p, config.get("energy")


def _open_output(path):
    if path is None or path == "-":
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w")


def _cmd_potential(args, parser):
    p, _ = _resolve_params(args, parser)
    if args.count < 1:
        parser.error("--count must be at least 1")
    xs = np.linspace(args.x_from, args.x_to, args.count)
    with _open_output(args.output) as out:
        out.write("x,V,z\n")
        for x in xs:
            x = float(x)
            out.write(f"{_fmt(x)},{_fmt(potential(p, x))},{_fmt(z_of_x(p, x))}\n")
    return 0


def _sweep_row(p, args, value, config_energy):
    if args.variable == "energy":
        params, energy = p, value
    else:
        params, energy = replace(p, sigma=value), args.energy
        if energy is None:
            energy = config_energy
    res = transmission(params, energy)
    fields = [res.T, res.R, res.T_sp]
    if args.with_oracle:
        fields.append(richardson_T(params, energy)[0])
    return fields


def _cmd_sweep(args, parser):
    p, config_energy = _resolve_params(args, parser)
    if args.count < 1:
        parser.error("--count must be at least 1")
    if args.variable == "sigma" and args.energy is None and config_energy is None:
        parser.error("sigma sweeps need --energy (or an energy line in the config file)")
    header = [args.variable, "T", "R", "T_sp"]
    if args.with_oracle:
        header.append("T_num")
    values = np.linspace(args.start, args.stop, args.count)
    n_bad = 0
    with _open_output(args.output) as out:
        out.write(",".join(header) + "\n")
        for value in values:
            value = float(value)
            try:
                fields = _sweep_row(p, args, value, config_energy)
            except StepScatterError:
                fields = [math.nan] * (len(header) - 1)
                n_bad += 1
            out.write(",".join(_fmt(v) for v in [value] + fields) + "\n")
    if n_bad == len(values):
        print("error: every row of the sweep was out of domain", file=sys.stderr)
        return 1
    return 0


def _cmd_verify(args, parser):
    results = run_checks(level=args.level, tamper_q=args.tamper_q, out=sys.stdout)
    return 0 if all(r.passed for r in results) else 1


def _build_parser():
    physics = argparse.ArgumentParser(add_help=False)
    group = physics.add_argument_group("potential parameters")
    for key in _PHYS_KEYS:
        group.add_argument(f"--{key}", type=float, default=None, help=_PHYS_HELP[key])
    group.add_argument("--config", metavar="FILE",
                       help="read parameters from a 'key = value' file; flags win")

    parser = argparse.ArgumentParser(
        prog="stepscatter",
        description="Exact scattering on a smooth asymmetric potential step.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pot = sub.add_parser("potential", parents=[physics],
                         help="tabulate V(x) and the coordinate z(x) as CSV")
    pot.add_argument("--from", dest="x_from", type=float, default=-8.0,
                     help="left end of the x range (default -8)")
    pot.add_argument("--to", dest="x_to", type=float, default=8.0,
                     help="right end of the x range (default 8)")
    pot.add_argument("--count", type=int, default=401,
                     help="number of rows (default 401)")
    pot.add_argument("--output", "-o", metavar="FILE",
                     help="write CSV here instead of stdout")
    pot.set_defaults(func=_cmd_potential)

    swp = sub.add_parser("sweep", parents=[physics],
                         help="tabulate T, R, and the abrupt-step T as CSV")
    swp.add_argument("--variable", choices=("energy", "sigma"), default="energy",
                     help="which quantity the sweep varies (default energy)")
    swp.add_argument("--from", dest="start", type=float, required=True,
                     help="first value of the swept variable")
    swp.add_argument("--to", dest="stop", type=float, required=True,
                     help="last value of the swept variable")
    swp.add_argument("--count", type=int, default=200,
                     help="number of rows (default 200)")
    swp.add_argument("--energy", type=float, default=None,
                     help="fixed energy for sigma sweeps")
    swp.add_argument("--with-oracle", action="store_true",
                     help="append a T_num column from the numerical integrator (slow)")
    swp.add_argument("--output", "-o", metavar="FILE",
                     help="write CSV here instead of stdout")
    swp.set_defaults(func=_cmd_sweep)

    ver = sub.add_parser("verify", help="run the built-in verification battery")
    ver.add_argument("--level", choices=("fast", "full"), default="fast",
                     help="fast runs in seconds; full runs the complete grids")
    ver.add_argument("--tamper-q", dest="tamper_q", type=float, default=0.0,
                     help=argparse.SUPPRESS)
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.func(args, parser)


if __name__ == "__main__":
    sys.exit(main())
