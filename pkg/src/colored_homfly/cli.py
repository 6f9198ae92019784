"""Command line: symbolic invariants, numeric values, asymptotic sequences, grids, the integral."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

import mpmath

from . import asymptotics
from .coefficients import alpha, alpha_mirror, beta, c_coeff, gamma, s_coeff
from .invariants import KnotId, clear_denominator, colored_homfly, parse_knot
from .laurent import ONE, NonDivisibleError, RationalFn
from .numeric import EvalPoint, NumericFailure, eval_invariant
from .oracle import DiagramError, fixture_names, homfly_skein, load_fixture

PREC_ENV = "COLORED_HOMFLY_PREC"
MAX_N_SYMBOLIC = 8
MAX_N_SYMBOLIC_WH = 6
MAX_TWIST_P = 12
MAX_N_SINE = 5000
MAX_N_SUMS = 400

DEBUG_COEFFS = {
    "alpha": (alpha, 3),
    "alpha_mirror": (alpha_mirror, 3),
    "beta": (beta, 5),
    "gamma": (gamma, 4),
    "c": (c_coeff, 5),
    "s": (s_coeff, 2),
}

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_CONSISTENCY = 0, 2, 3, 4


class UsageError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    pass


# -- argument parsing -----------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    """``"13/10"``, ``"1.3"`` or ``"2"`` as an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def parse_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError("range must look like a:b or a:b:step")
    try:
        vals = [int(p) for p in parts]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from exc
    if len(vals) == 2:
        vals.append(1)
    return vals[0], vals[1], vals[2]


def parse_xrange(text: str) -> tuple[Fraction, Fraction, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("x range must look like from:to:steps")
    return parse_rational(parts[0]), parse_rational(parts[1]), int(parts[2])


def knot_arg(text: str) -> KnotId:
    try:
        return parse_knot(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def default_precision() -> int | None:
    raw = os.environ.get(PREC_ENV)
    if not raw:
        return None
    try:
        bits = int(raw)
    except ValueError:
        raise UsageError(f"{PREC_ENV} must be an integer number of bits, got {raw!r}") from None
    if bits < 16:
        raise UsageError(f"{PREC_ENV} must be at least 16")
    return bits


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None, help=f"working precision in bits (default: ${PREC_ENV} or adaptive)")
    common.add_argument("--format", choices=["json", "csv", "text"], default=None)
    common.add_argument("--out", type=Path, default=None, help="output file (written atomically); stdout if omitted")
    common.add_argument("--threads", type=int, default=1, help="worker processes for independent samples")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="colored-homfly", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariant", parents=[common], help="exact colored HOMFLY polynomial")
    s.add_argument("--knot", type=knot_arg, required=True)
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("evaluate", parents=[common], help="value at q = exp(i pi/(M+N-2)), a = q^M, color N-1")
    s.add_argument("--knot", type=knot_arg, required=True)
    s.add_argument("--M", type=parse_rational, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--method", choices=["factored", "direct"], default="factored")

    s = sub.add_parser("asympt", parents=[common], help="x, y sequence over a range of N")
    s.add_argument("--knot", type=knot_arg, required=True)
    s.add_argument("--M", type=parse_rational, required=True)
    s.add_argument("--N-range", dest="N_range", type=parse_range, required=True)

    s = sub.add_parser("grid", parents=[common], help="x at the ratio grid M_k for one N")
    s.add_argument("--knot", type=knot_arg, required=True)
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--divisions", type=int, default=12)

    s = sub.add_parser("integral", parents=[common], help="samples of f(x) = 4 int_{pi x}^{5pi/6} log(2 sin t) dt")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", type=parse_rational)
    g.add_argument("--x-range", dest="x_range", type=parse_xrange)

    s = sub.add_parser("oracle", parents=[common], help="uncolored HOMFLY of a committed diagram fixture")
    s.add_argument("--fixture", required=False)
    s.add_argument("--list", action="store_true", help="list fixture names")

    s = sub.add_parser("debug", parents=[common], help="inspect one skein coefficient")
    s.add_argument("--coeff", choices=sorted(DEBUG_COEFFS), required=True)
    s.add_argument("--args", dest="coeff_args", required=True, help="comma-separated integer indices, e.g. 2,1,1")
    return p


# -- output ------------------------------------------------------------------------

def csv_digits(bits: int) -> int:
    return max(1, min(30, math.floor(bits * math.log10(2)) - 8))


def fmt(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, strip_zeros=False)


def render_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def polynomial_record(v: RationalFn) -> dict:
    num, factor = clear_denominator(v)
    rec = {"polynomial": num.to_records()}
    if factor != ONE:
        rec["clearing_factor"] = factor.to_records()
    return rec


def polynomial_text(v: RationalFn) -> str:
    num, factor = clear_denominator(v)
    return str(num) + "\n" if factor == ONE else f"({num}) / ({factor})\n"


# -- commands ----------------------------------------------------------------------

def cmd_invariant(args) -> str:
    knot = args.knot.canonical
    if knot.tag == "4_1":
        raise UsageError("4_1 has no symbolic formula here; use `evaluate` or the oracle")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    limit = MAX_N_SYMBOLIC_WH if knot.tag == "wh" else MAX_N_SYMBOLIC
    if args.n > limit:
        raise UsageError(f"--n {args.n} exceeds the size guard {limit} for {knot}")
    if knot.tag == "twist" and knot.p > MAX_TWIST_P:
        raise UsageError(f"twist parameter exceeds the size guard {MAX_TWIST_P}")
    v = colored_homfly(knot, args.n)
    if (args.format or "json") == "text":
        return polynomial_text(v)
    if args.format == "csv":
        raise UsageError("invariant supports json or text output")
    if knot.tag != "wh":
        # knots must reduce to a Laurent polynomial; a leftover denominator is a consistency failure
        _, factor = clear_denominator(v)
        if factor != ONE:
            raise ConsistencyError(f"{knot} at n={args.n} does not reduce to a Laurent polynomial")
    return render_json({"knot": str(knot), "n": args.n, **polynomial_record(v)})


def _guard_N(knot: KnotId, N: int) -> None:
    limit = MAX_N_SINE if knot.tag == "4_1" else MAX_N_SUMS
    if N > limit:
        raise UsageError(f"N={N} exceeds the size guard {limit} for {knot}")
    if N < 2:
        raise UsageError("N must be at least 2")


def cmd_evaluate(args) -> str:
    _guard_N(args.knot, args.N)
    try:
        pt = EvalPoint.of(args.M, args.N, args.prec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res = eval_invariant(args.knot, pt, method=args.method)
    digits = csv_digits(res.precision_used)
    rec = res.as_record(digits)
    if args.format == "csv":
        return render_csv(list(rec), [list(rec.values())])
    return render_json(rec)


def cmd_asympt(args) -> str:
    a, b, step = args.N_range
    if step < 1:
        raise UsageError("step must be at least 1")
    if a <= b:
        _guard_N(args.knot, b + 1)
        if a < 2:
            raise UsageError("N must be at least 2")
    samples = asymptotics.sequence(args.knot, args.M, a, b, step, args.prec, args.threads)
    header = ["M_num", "M_den", "N", "x", "y"]
    rows = []
    for s in samples:
        d = csv_digits(s.precision)
        rows.append([s.M.numerator, s.M.denominator, s.N, fmt(s.x, d), fmt(s.y, d)])
    if args.format == "json":
        return render_json([dict(zip(header, r)) for r in rows])
    return render_csv(header, rows)


def cmd_grid(args) -> str:
    _guard_N(args.knot, args.N + 1)
    if args.divisions < 2:
        raise UsageError("--divisions must be at least 2")
    bits = args.prec or EvalPoint.of(2, args.N).default_precision()
    d = csv_digits(bits)
    rows = [[int(r * args.divisions), args.divisions, M.numerator, M.denominator, args.N, fmt(x, d)]
            for r, x, M in asymptotics.integral_analogue(args.knot, args.N, args.prec, args.divisions, args.threads)]
    header = ["k", "divisions", "M_num", "M_den", "N", "x"]
    if args.format == "json":
        return render_json([dict(zip(header, r)) for r in rows])
    return render_csv(header, rows)


def cmd_integral(args) -> str:
    if args.x is not None:
        xs = [args.x]
    else:
        lo, hi, steps = args.x_range
        if steps < 0 or (steps == 0 and lo != hi) or lo > hi:
            raise UsageError("need from <= to and steps >= 1 (or steps 0 with from == to)")
        xs = [lo] if steps == 0 else [lo + (hi - lo) * Fraction(i, steps) for i in range(steps + 1)]
    bits = args.prec or 64
    d = csv_digits(bits)
    rows = []
    for x in xs:
        if not 0 <= x <= Fraction(5, 6):
            raise UsageError("x must lie in [0, 5/6]")
        rows.append([fmt(mpmath.mpf(x.numerator) / x.denominator, d), fmt(asymptotics.f_integral(x, bits), d)])
    if args.format == "json":
        return render_json([{"x": x, "f": f} for x, f in rows])
    return render_csv(["x", "f"], rows)


def cmd_oracle(args) -> str:
    if args.list:
        return "\n".join(fixture_names()) + "\n"
    if not args.fixture:
        raise UsageError("--fixture is required")
    try:
        d = load_fixture(args.fixture)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    v = homfly_skein(d)
    if (args.format or "json") == "text":
        return polynomial_text(v)
    return render_json({"fixture": args.fixture, **polynomial_record(v)})


def cmd_debug(args) -> str:
    fn, arity = DEBUG_COEFFS[args.coeff]
    try:
        idx = [int(x) for x in args.coeff_args.split(",")]
    except ValueError:
        raise UsageError("--args must be comma-separated integers") from None
    if len(idx) != arity:
        raise UsageError(f"{args.coeff} takes {arity} indices")
    try:
        v = RationalFn.of(fn(*idx))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "json":
        return render_json({"coeff": args.coeff, "args": idx, "num": v.num.to_records(), "den": v.den.to_records()})
    return polynomial_text(v)


COMMANDS = {
    "invariant": cmd_invariant,
    "evaluate": cmd_evaluate,
    "asympt": cmd_asympt,
    "grid": cmd_grid,
    "integral": cmd_integral,
    "oracle": cmd_oracle,
    "debug": cmd_debug,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.prec is None:
            args.prec = default_precision()
        if args.prec is not None and args.prec < 16:
            raise UsageError("--prec must be at least 16 bits")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        text = COMMANDS[args.command](args)
        emit(text, args.out)
    except (UsageError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericFailure as exc:
        extra = f" (largest intermediate magnitude {exc.max_magnitude:.3e})" if exc.max_magnitude else ""
        print(f"numeric failure: {exc}{extra}", file=sys.stderr)
        return EXIT_NUMERIC
    except (NonDivisibleError, ConsistencyError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
