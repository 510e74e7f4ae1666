"""Command-line front end.

Subcommands: gen, surface, wnorm, bound, sweep, verify. Exit codes: 0 ok,
1 verification failure, 2 usage or invalid parameters, 3 incompatible data,
4 unsupported mode.
"""

import argparse
from fractions import Fraction
import json
import math
import os
import sys

import numpy as np

from . import bounds, io, verify
from .errors import (
    DegenerateInputError,
    DomainError,
    GridTooNarrowError,
    IncompatibleGridsError,
    InvalidParamsError,
    NoClosedFormError,
    OffGridError,
    UnsupportedOrderError,
    WeightNormDivergenceError,
)
from .phase_plane import Grid2D, cross_ambiguity, weighted_r_norm, wigner, woodward_ambiguity
from .signal_core import (
    DEFAULT_DT,
    DEFAULT_N,
    DEFAULT_T0,
    GaussianParams,
    Waveform,
    make_gaussian,
    normalize_l2,
)
from .weights import GaussianWeight, IndicatorWeight, Rect, from_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

SURFACES = {"ambiguity": cross_ambiguity, "woodward": woodward_ambiguity, "wigner": wigner}


class UsageError(Exception):
    pass


def _number(text):
    return float(Fraction(text.strip()))


def parse_axis(text):
    """``E,STEP`` for ``[-E, E)`` or ``LO,HI,STEP`` for ``[LO, HI)``; fractions allowed."""
    try:
        parts = [_number(p) for p in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad axis {text!r}; use E,STEP or LO,HI,STEP") from None
    if len(parts) == 2:
        lo, hi, step = -parts[0], parts[0], parts[1]
    elif len(parts) == 3:
        lo, hi, step = parts
    else:
        raise argparse.ArgumentTypeError(f"bad axis {text!r}; use E,STEP or LO,HI,STEP")
    if not (step > 0 and hi > lo):
        raise argparse.ArgumentTypeError(f"axis {text!r} needs HI > LO and STEP > 0")
    n = (hi - lo) / step
    if abs(n - round(n)) > 1e-9 * max(1.0, n) or round(n) < 2:
        raise argparse.ArgumentTypeError(f"axis {text!r} must span a whole number (>= 2) of steps")
    return lo, step, int(round(n))


def parse_range(text):
    try:
        lo, hi = (_number(p) for p in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use LO,HI") from None
    return lo, hi


def _time_grid(args):
    if args.grid_t is None:
        return DEFAULT_T0, DEFAULT_DT, DEFAULT_N
    return args.grid_t


def _phase_grid(args):
    d = Grid2D.default()
    tau = args.grid_tau or (d.tau0, d.dtau, d.n_tau)
    nu = args.grid_nu or (d.nu0, d.dnu, d.n_nu)
    return Grid2D(tau[0], tau[1], tau[2], nu[0], nu[1], nu[2])


def _load_weight(text):
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--weight is neither a JSON file nor inline JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise UsageError("--weight must be a JSON object")
    try:
        return from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (IncompatibleGridsError, OffGridError)):
            raise
        raise InvalidParamsError(f"bad weight description: {exc}") from None


def _emit(args, payload, path=None):
    text = io.dumps(payload, timestamp=not args.no_timestamp)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands -----------------------------------------------------------------

def cmd_gen(args):
    t0, dt, n = _time_grid(args)
    if args.kind == "gaussian":
        a = complex(args.a_re, args.a_im)
        b = complex(args.b_re, args.b_im)
        # validate before normalizing so Re(a) <= 0 is reported as such
        GaussianParams(a, b, complex(args.c_re, args.c_im))
        p = GaussianParams.unit(a, b)
        w = make_gaussian(GaussianParams(p.a, p.b, p.c + 1j * args.c_im), t0, dt, n)
    elif args.kind == "chirp":
        a = complex(args.a_re, -math.pi * args.rate)
        w = make_gaussian(GaussianParams.unit(a), t0, dt, n)
    else:
        env = make_gaussian(GaussianParams.unit(args.a_re), t0, dt, n)
        t = env.times
        tones = np.exp(2j * np.pi * args.f1 * t) + np.exp(2j * np.pi * args.f2 * t)
        w = normalize_l2(Waveform(env.samples * tones, t0, dt))
    io.write_waveform_csv(args.out, w)
    return EXIT_OK


def cmd_surface(args):
    g = io.read_waveform_csv(args.g)
    gamma = io.read_waveform_csv(args.gamma)
    if not g.same_grid(gamma):
        raise IncompatibleGridsError(
            f"waveform grids differ: (t0={g.t0}, dt={g.dt}, n={g.n}) vs "
            f"(t0={gamma.t0}, dt={gamma.dt}, n={gamma.n})")
    s = SURFACES[args.kind](g, gamma, _phase_grid(args), method=args.method)
    io.write_surface_csv(args.out, s)
    _emit(args, s.summary(), os.path.splitext(args.out)[0] + ".json")
    return EXIT_OK


def cmd_wnorm(args):
    s = io.read_surface_csv(args.surface)
    c = _load_weight(args.weight)
    value = weighted_r_norm(s, c, args.r)
    _emit(args, {"value": value, "r": args.r, "weight": c.describe(), "grid": s.grid.to_dict()},
          args.out)
    return EXIT_OK


def cmd_bound(args):
    c = _load_weight(args.weight)
    if args.mode == "closed":
        rep = bounds.best_bound_closed(args.r, c)
    elif args.mode == "numeric":
        rep = bounds.best_bound_numeric(args.r, c, p_max=args.p_max)
    else:
        if args.p is None:
            raise UsageError("--mode at-p needs --p")
        rep = bounds.bound_at(args.r, args.p, c)
    _emit(args, rep.to_dict(), args.out)
    return EXIT_OK


def sweep_rows(param, lo, hi, steps, r):
    """Rows ``(value, interior, boundary, combined, p_opt)`` for the bound curves.

    ``interior`` is the stationary-point formula evaluated whether or not its
    exponent is feasible; ``boundary`` is the bound at ``p = max(1, 2/r)``;
    ``combined`` is the optimum over feasible exponents.
    """
    if not (lo > 0 and hi > lo and steps >= 2):
        raise UsageError("sweep needs 0 < lo < hi and steps >= 2")
    pf = bounds.p_floor(r)
    rows = []
    for v in np.linspace(lo, hi, steps):
        v = float(v)
        if param == "alpha":
            c = GaussianWeight(v)
            interior = 2 * v / (2 * v + r)
            best = bounds.best_bound_gaussian(r, v)
        else:
            c = IndicatorWeight(Rect(0.0, v, 0.0, 1.0))
            interior = math.exp(-r * v / (2 * math.e))
            best = bounds.best_bound_indicator(r, v)
        rows.append((v, interior, bounds.main_bound(r, pf, c), best.bound_value, best.p_opt))
    return rows


def switch_point(param, r):
    if param == "alpha":
        return (2.0 - r) / 2.0
    return 2.0 * math.e / max(r, 2.0)


def cmd_sweep(args):
    lo, hi = args.range
    rows = sweep_rows(args.param, lo, hi, args.steps, args.r)
    lines = ["param,interior,boundary,combined,p_opt"]
    lines += [",".join(io.fmt(x) for x in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args):
    results = verify.run_all(args.seed)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    verify.write_results_csv(os.path.join(out_dir, "verify_results.csv"), results)
    with open(os.path.join(out_dir, "verify_report.json"), "w") as fh:
        fh.write(verify.report(results, args.seed, timestamp=not args.no_timestamp))
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:24s} measured={r.measured:.10g} "
              f"expected={r.expected:.10g} tol={r.tolerance:g}")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-t", type=parse_axis, default=None, metavar="AXIS",
                        help="time grid, E,STEP or LO,HI,STEP (default -8,8,1/64)")
    common.add_argument("--grid-tau", type=parse_axis, default=None, metavar="AXIS",
                        help="delay axis (default 4,1/32)")
    common.add_argument("--grid-nu", type=parse_axis, default=None, metavar="AXIS",
                        help="Doppler axis (default 4,1/32)")
    common.add_argument("--out", default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit generated_at from JSON output")

    parser = argparse.ArgumentParser(prog="ambnorm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a waveform CSV")
    p.add_argument("kind", choices=["gaussian", "chirp", "two_tone"])
    p.add_argument("--a-re", type=float, default=math.pi)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--b-re", type=float, default=0.0)
    p.add_argument("--b-im", type=float, default=0.0)
    p.add_argument("--c-re", type=float, default=0.0)
    p.add_argument("--c-im", type=float, default=0.0)
    p.add_argument("--rate", type=float, default=0.2, help="chirp rate (Hz/s)")
    p.add_argument("--f1", type=float, default=-0.25)
    p.add_argument("--f2", type=float, default=0.25)
    p.set_defaults(func=cmd_gen, need_out=True)

    p = sub.add_parser("surface", parents=[common], help="ambiguity or Wigner surface CSV")
    p.add_argument("g")
    p.add_argument("gamma")
    p.add_argument("--kind", choices=sorted(SURFACES), default="ambiguity")
    p.add_argument("--method", choices=["auto", "fft", "direct"], default="auto")
    p.set_defaults(func=cmd_surface, need_out=True)

    p = sub.add_parser("wnorm", parents=[common], help="weighted r-norm of a surface")
    p.add_argument("surface")
    p.add_argument("--weight", required=True, help="weight JSON (inline or file)")
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_wnorm)

    p = sub.add_parser("bound", parents=[common], help="evaluate or optimize the bound")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--weight", required=True, help="weight JSON (inline or file)")
    p.add_argument("--mode", choices=["closed", "numeric", "at-p"], default="closed")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--p-max", type=float, default=1024.0)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sweep", parents=[common], help="bound curves over alpha or |U|")
    p.add_argument("--param", choices=["alpha", "areaU"], required=True)
    p.add_argument("--range", type=parse_range, required=True, metavar="LO,HI")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--r", type=float, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="run the verification scenarios")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "need_out", False) and not args.out:
        parser.error(f"{args.command} needs --out")
    try:
        return args.func(args)
    except (NoClosedFormError, UnsupportedOrderError) as exc:
        code, msg = EXIT_UNSUPPORTED, exc
    except (IncompatibleGridsError, OffGridError, WeightNormDivergenceError) as exc:
        code, msg = EXIT_DATA, exc
    except (UsageError, DomainError, GridTooNarrowError, DegenerateInputError, OSError) as exc:
        code, msg = EXIT_USAGE, exc
    print(f"ambnorm {args.command}: error: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
