"""Command-line front end.

Data rows go to standard output (or ``--output``); diagnostics and verdicts
go to standard error. Exit codes: 0 success, 1 usage or validation error,
2 quadrature convergence failure, 3 third-law check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .asymptotics import DEFAULT_FIT_THETAS, LOW_T_WINDOW, fit_third_law_slope, low_t_entropy
from .baths import DEFAULT_ETA, DEFAULT_OMEGA_CUT, Discrete, Drude, Ohmic, check_bath
from .core_types import FieldSpec, QuadratureSpec
from .errors import ConvergenceError, ValidationError
from .thermo import sweep
from .wigner import compare_entropies

COMMANDS = ("free-energy", "entropy", "sweep", "third-law-check", "compare-wigner")
EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_CHECK_FAILED = 0, 1, 2, 3

DEFAULT_WIGNER_THETAS = (1e-3, 1.0, 100.0)
THERMO_COLUMNS = ("theta", "F_total", "F_zero_field", "dF_field", "S", "est_abs_error", "evals")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    bath: object
    field: FieldSpec
    thetas: list
    quad: QuadratureSpec
    output_format: str = "csv"
    output_path: str = None
    omega_tilde: float = 1.0
    echo: dict = field(default_factory=dict)


def _theta_log(spec):
    try:
        lo, hi, n = spec.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi:n, got {spec!r}") from None
    if not (0 < lo < hi) or n < 2:
        raise argparse.ArgumentTypeError("theta-log needs 0 < lo < hi and n >= 2")
    return [float(t) for t in np.geomspace(lo, hi, n)]


def _modes(spec):
    modes = []
    for item in filter(None, (s.strip() for s in spec.split(";"))):
        try:
            m, w = item.split(":")
            modes.append((float(m), float(w)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad mode {item!r}; expected mass:frequency") from None
    return modes


def _build_parser():
    p = _Parser(prog="oscbath", description="Thermodynamics of a damped quantum oscillator.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--bath", choices=("ohmic", "drude", "discrete"), default="ohmic")
    p.add_argument("--gamma", type=float, default=0.1, help="damping gamma/omega0")
    p.add_argument("--omega-cut", type=float, default=DEFAULT_OMEGA_CUT, help="Drude cutoff / omega0")
    p.add_argument("--modes", type=_modes, default=None, help="discrete bath, 'm:w;m:w;...'")
    p.add_argument("--eta", type=float, default=DEFAULT_ETA, help="discrete-bath broadening")
    p.add_argument("--b-field", type=float, default=0.0, help="cyclotron ratio omega_c/omega0")
    p.add_argument("--theta", type=float, action="append", default=None, help="kT/(hbar omega0); repeatable")
    p.add_argument("--theta-log", type=_theta_log, default=None, help="lo:hi:n log-spaced grid")
    p.add_argument("--omega", type=float, default=1.0, help="oscillator frequency for compare-wigner")
    p.add_argument("--rel-tol", type=float, default=QuadratureSpec.rel_tol)
    p.add_argument("--abs-tol", type=float, default=QuadratureSpec.abs_tol)
    p.add_argument("--cutoff-lambda", type=float, default=QuadratureSpec.cutoff_lambda)
    p.add_argument("--max-subdivisions", type=int, default=QuadratureSpec.max_subdivisions)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, metavar="PATH")
    p.add_argument("--config", default=None, metavar="PATH", help="flat 'key = value' file")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def read_config(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("_", "-")] = value
    return values


def _apply_config(parser, values):
    by_flag = {a.option_strings[0][2:]: a for a in parser._actions if a.option_strings}
    defaults = {}
    for key, value in values.items():
        action = by_flag.get(key)
        if action is None or key in ("config", "help", "version"):
            raise UsageError(f"unknown config key {key!r}")
        if key == "theta":
            try:
                defaults["theta"] = [float(v) for v in value.split(",") if v.strip()]
            except ValueError:
                raise UsageError(f"config key 'theta': bad value {value!r}") from None
            continue
        if action.choices and value not in action.choices:
            raise UsageError(f"config key {key!r}: {value!r} not in {sorted(action.choices)}")
        try:
            defaults[action.dest] = action.type(value) if action.type else value
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise UsageError(f"config key {key!r}: {exc}") from None
    return defaults


def _make_bath(args):
    if args.bath == "ohmic":
        return Ohmic(args.gamma)
    if args.bath == "drude":
        return Drude(args.gamma, args.omega_cut)
    if args.modes is None:
        raise ValidationError("discrete bath requires --modes")
    return Discrete(tuple(args.modes), args.eta)


def parse_args(argv):
    """Turn ``argv`` into a validated :class:`RunConfig`.

    Precedence is flags, then the ``--config`` file, then built-in defaults.

    Raises
    ------
    UsageError
        Malformed command line or config file.
    ValidationError
        A parameter violates its invariant.
    """
    argv = list(argv)
    pre = _Parser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)

    parser = _build_parser()
    config_theta = None
    if known.config:
        defaults = _apply_config(parser, read_config(known.config))
        config_theta = defaults.pop("theta", None)
        parser.set_defaults(**defaults)
    args = parser.parse_args(argv)

    bath = check_bath(_make_bath(args))
    field_spec = FieldSpec(args.b_field)
    quad = QuadratureSpec(
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        cutoff_lambda=args.cutoff_lambda,
        max_subdivisions=args.max_subdivisions,
    )
    thetas = args.theta if args.theta is not None else config_theta
    if args.theta_log is not None:
        thetas = (thetas or []) + args.theta_log
    if not thetas:
        if args.command == "third-law-check":
            thetas = list(DEFAULT_FIT_THETAS)
        elif args.command == "compare-wigner":
            thetas = list(DEFAULT_WIGNER_THETAS)
        else:
            raise UsageError(f"{args.command} needs --theta or --theta-log")
    if args.command == "third-law-check" and isinstance(bath, Discrete):
        raise ValidationError("third-law-check supports ohmic and drude baths only")
    if args.command == "compare-wigner" and not args.omega > 0:
        raise ValidationError("omega must be > 0")

    echo = {
        "command": args.command,
        "bath": {"kind": bath.kind, **asdict(bath)},
        "b": field_spec.b,
        "thetas": thetas,
        "quadrature": asdict(quad),
    }
    if args.command == "compare-wigner":
        echo = {"command": args.command, "omega": args.omega, "thetas": thetas}
    return RunConfig(
        command=args.command,
        bath=bath,
        field=field_spec,
        thetas=thetas,
        quad=quad,
        output_format=args.format,
        output_path=args.output,
        omega_tilde=args.omega,
        echo=echo,
    )


def _num(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return format(float(x), ".17g")


def _render(columns, rows, config, diagnostics, fmt):
    if fmt == "json":
        doc = {
            "config": config,
            "rows": [dict(zip(columns, row)) for row in rows],
            "diagnostics": diagnostics,
        }
        return json.dumps(doc, indent=2, sort_keys=False, default=float) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_num(v) for v in row])
    return buf.getvalue()


def _thermo_row(theta, res):
    return (
        theta,
        res.free_energy_total,
        res.free_energy_zero_field,
        res.delta_free_energy_field,
        res.entropy,
        res.est_abs_error,
        res.integrand_evals,
    )


def _thermo_diag(results):
    return {
        "max_est_abs_error": max((r.est_abs_error for _, r in results), default=0.0),
        "max_entropy_est_error": max((r.entropy_est_error for _, r in results), default=0.0),
        "total_evals": sum(r.integrand_evals for _, r in results),
    }


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(config, err=None):
    """Execute a :class:`RunConfig`; returns the process exit code."""
    err = err if err is not None else sys.stderr
    cfg = config

    if cfg.command == "compare-wigner":
        rows = compare_entropies(cfg.omega_tilde, cfg.thetas)
        columns = ("theta", "S_exact", "S_wigner", "discrepancy")
        _emit(_render(columns, rows, cfg.echo, {}, cfg.output_format), cfg.output_path)
        return EXIT_OK

    thetas = cfg.thetas
    if cfg.command == "third-law-check":
        thetas = sorted(set(thetas))
        if max(thetas) > LOW_T_WINDOW:
            raise ValidationError(f"third-law-check thetas must be <= {LOW_T_WINDOW}")
    try:
        results = sweep(cfg.bath, cfg.field, thetas, cfg.quad)
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=err)
        if exc.diagnostics is not None:
            print(f"diagnostics: {exc.diagnostics}", file=err)
        if exc.partial:
            rows = [_thermo_row(t, r) for t, r in exc.partial]
            diag = {**_thermo_diag(exc.partial), "error": str(exc)}
            _emit(_render(THERMO_COLUMNS, rows, cfg.echo, diag, cfg.output_format), cfg.output_path)
        return EXIT_CONVERGENCE

    if cfg.command != "third-law-check":
        rows = [_thermo_row(t, r) for t, r in results]
        diag = _thermo_diag(results)
        _emit(_render(THERMO_COLUMNS, rows, cfg.echo, diag, cfg.output_format), cfg.output_path)
        return EXIT_OK

    gamma = cfg.bath.gamma_tilde
    expected = math.pi * gamma
    samples = [(t, r.entropy) for t, r in results]
    fit = fit_third_law_slope(samples, theta_max=LOW_T_WINDOW, expected_slope=expected)
    ok = fit.passes()
    rows = [(t, s, low_t_entropy(gamma, t)) for t, s in samples]
    diag = {
        **_thermo_diag(results),
        "slope": fit.slope,
        "expected_slope": expected,
        "slope_rel_error": fit.slope_rel_error,
        "intercept": fit.intercept,
        "residual_rms": fit.residual_rms,
        "verdict": "PASS" if ok else "FAIL",
    }
    _emit(_render(("theta", "S", "S_low_t"), rows, cfg.echo, diag, cfg.output_format), cfg.output_path)
    print(
        f"slope={fit.slope:.4f} expected={expected:.4f} intercept={fit.intercept:.3g} "
        f"{'PASS' if ok else 'FAIL'}",
        file=err,
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
        return run(config)
    except UsageError as exc:
        print(f"oscbath: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"oscbath: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"oscbath: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
