"""Command line front end.

Commands: ``propagate`` (straight world line from momenta), ``invert``
(momenta to velocities), ``transform`` (apply a unimodular matrix),
``reduce4d`` (the relativistic limit at one velocity), ``check`` (the
seeded invariant suite).

Every number is rendered with 17 significant digits, which round-trips
double precision, so identical inputs always produce byte-identical
output.  Errors print a single line ``Token: detail`` to stderr; exit codes
are 0 (success), 1 (check failure or malformed numeric input), 2 (domain
error), 64 (usage).
"""

import argparse
import sys

import numpy as np

from .checks import CHECK_NAMES, all_passed, run_checks
from .dynamics import invert_momenta
from .exceptions import FinslerError
from .geometry import cubic_form, group_action, vec_to_matrix
from .minkowski import minkowski_norm_sq, solve_x8dot

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class MalformedInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's default 2
        raise UsageError(message)


def _fmt(value):
    return format(float(value), ".17g")


def _to_json(value):
    if isinstance(value, dict):
        items = ", ".join(f'"{k}": {_to_json(v)}' for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_to_json(v) for v in value) + "]"
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return _fmt(value)
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot render {type(value)!r}")


def _parse_floats(tokens, what):
    try:
        values = np.array([float(tok) for tok in tokens])
    except ValueError as exc:
        raise MalformedInput(f"{what}: {exc}") from None
    if not np.all(np.isfinite(values)):
        raise MalformedInput(f"{what}: values must be finite")
    return values


def _parse_kappa(token):
    kappa = float(_parse_floats([token], "kappa")[0])
    if kappa == 0.0:
        raise UsageError("kappa must be nonzero")
    return kappa


def _emit(text, out):
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _read_matrix(args):
    if args.entries is not None:
        raw = _parse_floats(args.entries, "--entries")
    else:
        try:
            with open(args.matrix) as handle:
                tokens = handle.read().split()
        except OSError as exc:
            raise MalformedInput(f"--matrix: {exc}") from None
        raw = _parse_floats(tokens, f"matrix file {args.matrix}")
    if raw.size != 18:
        raise MalformedInput(f"expected 18 reals (re/im pairs row-major), got {raw.size}")
    pairs = raw.reshape(3, 3, 2)
    return pairs[..., 0] + 1j * pairs[..., 1]


def _trajectory_csv(s_values, points):
    lines = ["s," + ",".join(f"X{a}" for a in range(9))]
    for s, x in zip(s_values, points):
        lines.append(",".join([_fmt(s)] + [_fmt(c) for c in x]))
    return "\n".join(lines) + "\n"


def _trajectory_json(kappa, x0, v0, s_values, points):
    doc = {
        "kappa": kappa,
        "x0": list(x0),
        "v0": list(v0),
        "samples": [{"s": s, "x": list(x)} for s, x in zip(s_values, points)],
    }
    return _to_json(doc) + "\n"


def _cmd_propagate(args):
    kappa = _parse_kappa(args.kappa)
    x0 = _parse_floats(args.x0, "--x0")
    momenta = _parse_floats(args.momenta, "--momenta")
    s_max = float(_parse_floats([args.s_max], "--s-max")[0])
    if args.samples < 1:
        raise UsageError("--samples must be at least 1")
    v0 = invert_momenta(momenta, kappa)
    s_values = np.linspace(0.0, s_max, args.samples)
    points = x0 + s_values[:, None] * v0
    if args.format == "csv":
        text = _trajectory_csv(s_values, points)
    else:
        text = _trajectory_json(kappa, x0, v0, s_values, points)
    _emit(text, args.out)
    return EXIT_OK


def _cmd_invert(args):
    kappa = _parse_kappa(args.kappa)
    momenta = _parse_floats(args.momenta, "--momenta")
    v0 = invert_momenta(momenta, kappa)
    det = float(np.linalg.det(vec_to_matrix(v0)).real)
    if args.format == "csv":
        header = ",".join(f"X{a}dot" for a in range(9)) + ",det"
        row = ",".join([_fmt(c) for c in v0] + [_fmt(det)])
        text = header + "\n" + row + "\n"
    else:
        text = _to_json({"kappa": kappa, "v0": list(v0), "det": det}) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_transform(args):
    d = _read_matrix(args)
    x = _parse_floats(args.x, "--x")
    ell = group_action(d)
    moved = ell @ x
    before, after = float(cubic_form(x)), float(cubic_form(moved))
    if args.format == "csv":
        header = ",".join(f"X{a}p" for a in range(9)) + ",cubic_in,cubic_out"
        row = ",".join([_fmt(c) for c in moved] + [_fmt(before), _fmt(after)])
        text = header + "\n" + row + "\n"
    else:
        text = _to_json({"x_out": list(moved), "cubic_in": before, "cubic_out": after}) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_reduce4d(args):
    xdot03 = _parse_floats(args.xdot03, "--xdot03")
    xdot47 = _parse_floats(args.xdot47, "--xdot47")
    mass = float(_parse_floats([args.mass], "--mass")[0])
    light_speed = float(_parse_floats([args.c], "--c")[0])
    if mass <= 0 or light_speed <= 0:
        raise UsageError("--mass and --c must be positive")
    x8dot = float(solve_x8dot(xdot03, xdot47))
    nine = np.concatenate([xdot03, xdot47, [x8dot]])
    kappa = -mass * light_speed
    density_9 = kappa * float(np.cbrt(cubic_form(nine)))
    density_4 = kappa * float(np.sqrt(minkowski_norm_sq(xdot03)))
    if args.format == "csv":
        text = ("x8dot,finsler_density,minkowski_density\n"
                + ",".join([_fmt(x8dot), _fmt(density_9), _fmt(density_4)]) + "\n")
    else:
        text = _to_json({"x8dot": x8dot, "finsler_density": density_9,
                         "minkowski_density": density_4}) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def _cmd_check(args):
    if args.seed < 0:
        raise UsageError("--seed must be a nonnegative integer")
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    overrides = {}
    for spec in args.tol or []:
        name, eq, value = spec.partition("=")
        if not eq or name not in CHECK_NAMES:
            raise UsageError(f"--tol expects <known-check>=<value>, got {spec!r}")
        try:
            overrides[name] = float(value)
        except ValueError:
            raise UsageError(f"--tol {name}: bad value {value!r}") from None
    report = run_checks(seed=args.seed, trials=args.trials, tolerances=overrides)
    _emit(_to_json(report) + "\n", args.out)
    if not all_passed(report):
        failed = sum(1 for entry in report.values() if entry["failures"])
        print(f"CheckFailure: {failed} of {len(report)} checks failed", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="finsler9", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, kappa=False):
        if kappa:
            p.add_argument("--kappa", default="-1", help="coupling constant (default -1)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("propagate", help="sample the straight world line of given momenta")
    add_common(p, kappa=True)
    p.add_argument("--x0", nargs=9, required=True, metavar="X")
    p.add_argument("--momenta", nargs=9, required=True, metavar="P")
    p.add_argument("--s-max", required=True, dest="s_max")
    p.add_argument("--samples", type=int, required=True)
    p.set_defaults(func=_cmd_propagate)

    p = sub.add_parser("invert", help="recover velocities from momenta")
    add_common(p, kappa=True)
    p.add_argument("--momenta", nargs=9, required=True, metavar="P")
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("transform", help="apply a unimodular 3x3 matrix to a 9-vector")
    add_common(p)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help="file with 3 lines of 6 reals (re im re im re im)")
    src.add_argument("--entries", nargs=18, metavar="V",
                     help="18 reals, re/im pairs row-major")
    p.add_argument("--x", nargs=9, required=True, metavar="X")
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("reduce4d", help="solve the 4D-limit constraint at one velocity")
    add_common(p)
    p.add_argument("--xdot03", nargs=4, required=True, metavar="V")
    p.add_argument("--xdot47", nargs=4, required=True, metavar="S")
    p.add_argument("--mass", default="1")
    p.add_argument("--c", default="1")
    p.set_defaults(func=_cmd_reduce4d)

    p = sub.add_parser("check", help="run the seeded invariant suite")
    p.add_argument("--kappa", default="-1", help="accepted for uniformity; checks use -1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help="override one check tolerance (repeatable)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"Usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedInput as exc:
        print(f"MalformedInput: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except FinslerError as exc:
        print(f"{exc.token}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry():
    sys.exit(main())
