"""Command-line entry point: ``derivpoly <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error (pole, precondition),
3 internal invariant failure.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import calculus, numbers, polys, verify, zeta
from .algebra import GUARD_BITS, BigFloat, MIN_PRECISION, make_context
from .errors import DomainError, InvariantError

PRECISION_ENV = "DERIVPOLY_PRECISION_BITS"

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def _bits(text: str) -> int:
    v = _nonneg(text)
    if v < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be at least {MIN_PRECISION} bits")
    return v


_PI_POINT = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$", re.I)


def parse_point(text: str, precision: int) -> BigFloat:
    """Decimal, rational (``1/3``) or a rational multiple of pi (``3pi/4``)."""
    bits = precision + GUARD_BITS + 32
    ctx = make_context(bits)
    m = _PI_POINT.match(text)
    if m:
        sign, coeff, den = m.groups()
        v = ctx.pi * ctx.mpf(coeff or 1) / int(den or 1)
        return BigFloat(-v if sign == "-" else v, bits)
    try:
        if "/" in text:
            q = Fraction(text)
            return BigFloat(ctx.mpf(q.numerator) / q.denominator, bits)
        return BigFloat(ctx.mpf(text.strip()), bits)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse point {text!r}") from None


def _family(text: str) -> polys.PolyFamily:
    try:
        return polys.parse_family(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{exc}; choose from P, Q, HyperP, HyperQ") from None


def _kind(text: str) -> calculus.DerivKind:
    try:
        return calculus.parse_kind(text)
    except ValueError as exc:
        names = ", ".join(k.value for k in calculus.DerivKind)
        raise argparse.ArgumentTypeError(f"{exc}; choose from {names}") from None


def _range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"expected START:STOP with START <= STOP, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def default_precision(fallback: int) -> int:
    raw = os.environ.get(PRECISION_ENV)
    if not raw:
        return fallback
    try:
        return _bits(raw)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{PRECISION_ENV}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="derivpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("numbers", help="tangent / secant / Stirling subset triangles")
    p.add_argument("--kind", required=True, choices=[k.value for k in numbers.TriangleKind])
    p.add_argument("--max-n", required=True, type=_nonneg)
    p.add_argument("--format", default="text", choices=["text", "json", "csv", "latex"])

    p = sub.add_parser("poly", help="derivative polynomials P, Q, HyperP, HyperQ")
    p.add_argument("--family", required=True, type=_family)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--n", type=_nonneg)
    which.add_argument("--range", type=_range, metavar="START:STOP", help="inclusive index range")
    p.add_argument("--method", default="closed", choices=["closed", "recurrence"])
    p.add_argument("--format", default="text", choices=["text", "json", "csv", "latex"])

    p = sub.add_parser("derivative", help="n-th derivative, exact (--exact-u) or numeric (--point)")
    p.add_argument("--kind", required=True, type=_kind)
    p.add_argument("--n", required=True, type=_nonneg)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exact-u", type=_rational, metavar="U", help="exact value of tan/cot/tanh/coth at the point")
    mode.add_argument("--point", metavar="X", help="decimal, rational or multiple of pi, e.g. 3pi/4")
    p.add_argument("--precision-bits", type=_bits, default=None)
    p.add_argument("--format", default="text", choices=["text", "json"])

    p = sub.add_parser("zeta", help="check the Hurwitz zeta reflection identity")
    p.add_argument("--n", required=True, type=_nonneg)
    p.add_argument("--x", required=True, type=_rational)
    p.add_argument("--precision-bits", type=_bits, default=None)
    p.add_argument("--format", default="text", choices=["text", "json"])

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", action="append", choices=["all", *verify.SUITES], default=None)
    p.add_argument("--max-n", type=_nonneg, default=100)
    p.add_argument("--format", default="text", choices=["text", "json"])
    return parser


def _cmd_numbers(args, out) -> int:
    tri = numbers.build_triangle(args.kind, args.max_n)
    if args.format == "json":
        out.write(tri.to_json() + "\n")
    elif args.format == "csv":
        out.write(tri.to_csv())
    elif args.format == "latex":
        out.write(tri.to_latex() + "\n")
    else:
        for n, row in enumerate(tri.rows):
            out.write(f"{n}: " + " ".join(map(str, row)) + "\n")
    return EXIT_OK


def _cmd_poly(args, out) -> int:
    lo, hi = args.range if args.range else (args.n, args.n)
    items = [(args.family, n, polys.derivative_polynomial(args.family, n, args.method)) for n in range(lo, hi + 1)]
    single = args.range is None
    if args.format == "json":
        objs = [polys.to_json_obj(f, n, p) for f, n, p in items]
        out.write(json.dumps(objs[0] if single else objs) + "\n")
    elif args.format == "csv":
        out.write(polys.to_csv(items))
    elif args.format == "latex":
        for f, n, p in items:
            out.write((polys.to_latex(p) if single else f"{f.value}_{{{n}}}(x) = {polys.to_latex(p)}") + "\n")
    else:
        for f, n, p in items:
            out.write(f"{f.value}_{n}(x) = {polys.to_latex(p)}\n")
    return EXIT_OK


def _cmd_derivative(args, out) -> int:
    kind = args.kind
    if args.exact_u is not None:
        if args.precision_bits is not None:
            raise UsageError("--precision-bits only applies with --point")
        res = calculus.nth_derivative_exact(kind, args.n, args.exact_u)
        obj = calculus.exact_result_json(kind, args.n, args.exact_u, res)
        if args.format == "json":
            out.write(json.dumps(obj) + "\n")
        else:
            out.write(
                f"{kind.value}^({args.n}) at {kind.variable} x = {args.exact_u}: "
                f"coefficient {res.coefficient}, prefactor {res.prefactor.value}\n"
            )
        return EXIT_OK
    precision = args.precision_bits or default_precision(256)
    try:
        x = parse_point(args.point, precision)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    value = calculus.nth_derivative_numeric(kind, args.n, x, precision)
    if args.format == "json":
        out.write(json.dumps(calculus.numeric_result_json(kind, args.n, args.point, value)) + "\n")
    else:
        out.write(f"{kind.value}^({args.n})({args.point}) = {value} [{precision} bits]\n")
    return EXIT_OK


def _cmd_zeta(args, out) -> int:
    precision = args.precision_bits or default_precision(128)
    check = zeta.reflection_identity(args.n, args.x, precision)
    if args.format == "json":
        out.write(json.dumps(check.to_json_obj()) + "\n")
    else:
        out.write(
            f"n = {check.n}, x = {check.x} ({check.lhs_reading})\n"
            f"lhs      = {check.lhs}\n"
            f"rhs      = {check.rhs}\n"
            f"residual = {check.residual.to_string(10)} [{precision} bits]\n"
        )
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    report = verify.run_suites(args.suite or ["all"], args.max_n)
    if args.format == "json":
        out.write(json.dumps(report.to_json_obj()) + "\n")
    else:
        for r in report.results:
            tail = f"  ({r.detail})" if r.detail else ""
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.suite:18s} {r.case}{tail}\n")
        n_fail = sum(not r.passed for r in report.results)
        out.write(f"{len(report.results) - n_fail} passed, {n_fail} failed\n")
    return EXIT_OK if report.passed else EXIT_INTERNAL


COMMANDS = {
    "numbers": _cmd_numbers,
    "poly": _cmd_poly,
    "derivative": _cmd_derivative,
    "zeta": _cmd_zeta,
    "verify": _cmd_verify,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except InvariantError as exc:
        err.write(f"internal invariant failed: {exc}\n")
        return EXIT_INTERNAL
    except (DomainError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
