"""Closed-form n-th derivatives of the eight trig/hyperbolic functions.

    tan^(n)  = P_n(tan)           sec^(n)  = sec * Q_n(tan)
    cot^(n)  = (-1)^n P_n(cot)    csc^(n)  = (-1)^n csc * Q_n(cot)
    tanh^(n) = HP_n(tanh)         sech^(n) = sech * HQ_n(tanh)
    coth^(n) = HP_n(coth)         csch^(n) = csch * HQ_n(coth)

Two checks that never touch the derivative polynomials live here as well:
a Taylor-series oracle built from the addition formulas, and the
Stirling-number closed form for the cotangent.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    GUARD_BITS,
    BigFloat,
    GaussianInt,
    I,
    Real,
    check_precision,
    horner_mpf,
    make_context,
    poly_eval_exact,
    to_mpf,
)
from .errors import DivergenceError, DomainError, NonRealResult, PoleError
from .numbers import build_stirling_subset_triangle
from .polys import PolyFamily, derivative_polynomial_closed

MAX_TRIG_ARGUMENT = 2**20


class Prefactor(str, enum.Enum):
    ONE = "1"
    SEC = "sec"
    CSC = "csc"
    SECH = "sech"
    CSCH = "csch"


class DerivKind(str, enum.Enum):
    TAN = "tan"
    SEC = "sec"
    COT = "cot"
    CSC = "csc"
    TANH = "tanh"
    SECH = "sech"
    COTH = "coth"
    CSCH = "csch"

    @property
    def family(self) -> PolyFamily:
        return _TABLE[self][0]

    @property
    def alternating(self) -> bool:
        """True when the result carries an extra (-1)**n."""
        return _TABLE[self][1]

    @property
    def prefactor(self) -> Prefactor:
        return _TABLE[self][2]

    @property
    def variable(self) -> str:
        return _TABLE[self][3]

    @property
    def is_hyperbolic(self) -> bool:
        return self.family.is_hyperbolic


_TABLE = {
    DerivKind.TAN: (PolyFamily.P, False, Prefactor.ONE, "tan"),
    DerivKind.SEC: (PolyFamily.Q, False, Prefactor.SEC, "tan"),
    DerivKind.COT: (PolyFamily.P, True, Prefactor.ONE, "cot"),
    DerivKind.CSC: (PolyFamily.Q, True, Prefactor.CSC, "cot"),
    DerivKind.TANH: (PolyFamily.HyperP, False, Prefactor.ONE, "tanh"),
    DerivKind.SECH: (PolyFamily.HyperQ, False, Prefactor.SECH, "tanh"),
    DerivKind.COTH: (PolyFamily.HyperP, False, Prefactor.ONE, "coth"),
    DerivKind.CSCH: (PolyFamily.HyperQ, False, Prefactor.CSCH, "coth"),
}


def parse_kind(name: str) -> DerivKind:
    try:
        return DerivKind(name.lower())
    except ValueError:
        raise ValueError(f"unknown function kind {name!r}") from None


@dataclass(frozen=True)
class ExactDerivative:
    """``coefficient * prefactor(x)`` where the prefactor is left symbolic."""

    coefficient: Fraction
    prefactor: Prefactor

    def to_json_obj(self) -> dict:
        return {"coefficient": str(self.coefficient), "prefactor": self.prefactor.value}


_RATIONAL = {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}

DERIVATIVE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "kind": {"enum": [k.value for k in DerivKind]},
        "n": {"type": "integer", "minimum": 0},
        "mode": {"enum": ["exact", "numeric"]},
        "u": _RATIONAL,
        "point": {"type": "string"},
        "coefficient": {"type": "string"},
        "prefactor": {"enum": [p.value for p in Prefactor]},
        "precision": {"type": ["integer", "null"]},
    },
    "required": ["kind", "n", "mode", "coefficient", "prefactor", "precision"],
    "oneOf": [
        {"properties": {"mode": {"const": "exact"}, "coefficient": _RATIONAL, "precision": {"type": "null"}}, "required": ["u"]},
        {"properties": {"mode": {"const": "numeric"}, "prefactor": {"const": "1"}, "precision": {"type": "integer"}}, "required": ["point"]},
    ],
    "additionalProperties": False,
}


def exact_result_json(kind: DerivKind, n: int, u, result: ExactDerivative) -> dict:
    return {
        "kind": DerivKind(kind).value,
        "n": n,
        "mode": "exact",
        "u": str(Fraction(u)),
        "coefficient": str(result.coefficient),
        "prefactor": result.prefactor.value,
        "precision": None,
    }


def numeric_result_json(kind: DerivKind, n: int, point: str, value: BigFloat) -> dict:
    """The numeric value already includes the prefactor, hence prefactor "1"."""
    return {
        "kind": DerivKind(kind).value,
        "n": n,
        "mode": "numeric",
        "point": point,
        "coefficient": value.to_string(),
        "prefactor": Prefactor.ONE.value,
        "precision": value.precision,
    }


def _sign(kind: DerivKind, n: int) -> int:
    return -1 if kind.alternating and n % 2 else 1


def nth_derivative_exact(kind: DerivKind | str, n: int, u) -> ExactDerivative:
    """n-th derivative of ``kind`` where ``u`` is the exact value of its variable.

    ``u`` is tan x for tan/sec, cot x for cot/csc, tanh x for tanh/sech and
    coth x for coth/csch.
    """
    kind = DerivKind(kind)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    p = derivative_polynomial_closed(kind.family, n)
    return ExactDerivative(_sign(kind, n) * poly_eval_exact(p, Fraction(u)), kind.prefactor)


def _pole_tolerance(ctx, precision: int):
    return ctx.ldexp(1, -(precision // 2))


def _reduced_sin_cos(ctx, x, precision: int):
    """sin x and cos x after one subtraction of the nearest multiple of pi."""
    if abs(x) > MAX_TRIG_ARGUMENT:
        raise DomainError(f"|x| must not exceed 2^20 for trigonometric kinds, got {ctx.nstr(x, 8)}")
    wide = make_context(ctx.prec + 24)
    xw = wide.mpf(x)
    pi = wide.pi
    m = int(wide.nint(xw / pi))
    r = ctx.mpf(xw - m * pi)
    s, c = ctx.sin(r), ctx.cos(r)
    if m % 2:
        s, c = -s, -c
    return s, c


def _variable_and_prefactor(kind: DerivKind, ctx, x, precision: int):
    tol = _pole_tolerance(ctx, precision)
    if not kind.is_hyperbolic:
        s, c = _reduced_sin_cos(ctx, x, precision)
        if kind.variable == "tan":
            if abs(c) < tol:
                raise PoleError(f"{kind.value} has a pole near x = {ctx.nstr(x, 15)} (cos x ~ 0)")
            return s / c, 1 / c
        if abs(s) < tol:
            raise PoleError(f"{kind.value} has a pole near x = {ctx.nstr(x, 15)} (sin x ~ 0)")
        return c / s, 1 / s
    sh, ch = ctx.sinh(x), ctx.cosh(x)
    if kind.variable == "tanh":
        return sh / ch, 1 / ch
    if abs(sh) < tol:
        raise PoleError(f"{kind.value} has a pole at x = 0")
    return ch / sh, 1 / sh


def nth_derivative_numeric(kind: DerivKind | str, n: int, x: Real, precision: int = 256) -> BigFloat:
    """Evaluate the closed form at a floating point ``x``.

    Everything runs at ``precision + GUARD_BITS`` and is rounded once at the
    end.  Points within 2**(-precision/2) of a pole raise ``PoleError``.
    """
    kind = DerivKind(kind)
    precision = check_precision(precision)
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    ctx = make_context(precision + GUARD_BITS)
    xv = to_mpf(ctx, x)
    u, pref = _variable_and_prefactor(kind, ctx, xv, precision)
    value = horner_mpf(derivative_polynomial_closed(kind.family, n).coeffs, u, ctx)
    if kind.prefactor is not Prefactor.ONE:
        value *= pref
    value *= _sign(kind, n)
    return BigFloat(make_context(precision).mpf(value), precision)


def base_function(kind: DerivKind | str, x: Real, precision: int = 256) -> BigFloat:
    """The function itself, straight from mpmath, for finite-difference checks."""
    kind = DerivKind(kind)
    ctx = make_context(precision + GUARD_BITS)
    xv = to_mpf(ctx, x)
    f = {
        DerivKind.TAN: ctx.tan, DerivKind.SEC: ctx.sec, DerivKind.COT: ctx.cot,
        DerivKind.CSC: ctx.csc, DerivKind.TANH: ctx.tanh, DerivKind.SECH: ctx.sech,
        DerivKind.COTH: ctx.coth, DerivKind.CSCH: ctx.csch,
    }[kind]
    return BigFloat(make_context(precision).mpf(f(xv)), precision)


def central_difference(kind: DerivKind | str, n: int, x: Real, precision: int = 256, step_log2: int = -40) -> BigFloat:
    """n-th central difference quotient with step 2**step_log2 (error O(h^2))."""
    ctx = make_context(precision + GUARD_BITS)
    h = ctx.ldexp(1, step_log2)
    xv = to_mpf(ctx, x)
    total = ctx.zero
    for j in range(n + 1):
        node = xv + (ctx.mpf(n) / 2 - j) * h
        fx = base_function(kind, BigFloat(node, precision + GUARD_BITS), precision + GUARD_BITS).value
        total += (-1) ** j * math.comb(n, j) * fx
    return BigFloat(make_context(precision).mpf(total / h**n), precision)


# Taylor-series oracle.

def _shifted_quotient(kind: DerivKind, ctx, x, n_terms: int):
    """Numerator and denominator series in t of f(x + t) from addition formulas."""
    fact = [ctx.one]
    for k in range(1, n_terms):
        fact.append(fact[-1] * k)
    even = [1 / fact[k] if k % 2 == 0 else ctx.zero for k in range(n_terms)]
    odd = [1 / fact[k] if k % 2 else ctx.zero for k in range(n_terms)]
    one = [ctx.one] + [ctx.zero] * (n_terms - 1)
    if kind.is_hyperbolic:
        a, b = ctx.sinh(x), ctx.cosh(x)
        lower = [a * e + b * o for e, o in zip(even, odd)]  # sinh(x+t)
        upper = [b * e + a * o for e, o in zip(even, odd)]  # cosh(x+t)
        pairs = {
            DerivKind.TANH: (lower, upper),
            DerivKind.SECH: (one, upper),
            DerivKind.COTH: (upper, lower),
            DerivKind.CSCH: (one, lower),
        }
    else:
        sin_t = [o if (k // 2) % 2 == 0 else -o for k, o in enumerate(odd)]
        cos_t = [e if (k // 2) % 2 == 0 else -e for k, e in enumerate(even)]
        a, b = ctx.sin(x), ctx.cos(x)
        lower = [a * c + b * s for c, s in zip(cos_t, sin_t)]  # sin(x+t)
        upper = [b * c - a * s for c, s in zip(cos_t, sin_t)]  # cos(x+t)
        pairs = {
            DerivKind.TAN: (lower, upper),
            DerivKind.SEC: (one, upper),
            DerivKind.COT: (upper, lower),
            DerivKind.CSC: (one, lower),
        }
    return pairs[kind]


def _divide_with_bound(num, den, ctx, n_terms: int):
    """Series quotient plus a running absolute error bound per coefficient."""
    eps = ctx.ldexp(1, -ctx.prec + 2)
    d0 = den[0]
    out, err = [], []
    for n in range(n_terms):
        acc = num[n]
        scale = abs(num[n])
        prop = ctx.zero
        for j in range(1, n + 1):
            if den[j]:
                term = den[j] * out[n - j]
                acc -= term
                scale += abs(term)
                prop += abs(den[j]) * err[n - j]
        out.append(acc / d0)
        err.append((scale * eps + prop) / abs(d0) + abs(out[-1]) * eps)
    return out, err


def taylor_addition_oracle(kind: DerivKind | str, x: Real, n_max: int, precision: int = 256) -> list[BigFloat]:
    """Derivatives 0..n_max at ``x`` from the Maclaurin series of f(x + t).

    The series comes from the sin/cos (sinh/cosh) addition formulas and one
    series division, with a running error bound; if the bound cannot be
    pushed below 2**-precision (relative to max(1, |value|)) the working
    precision is doubled up to four times before ``DivergenceError``.
    """
    kind = DerivKind(kind)
    precision = check_precision(precision)
    if n_max < 0:
        raise DomainError(f"n_max must be nonnegative, got {n_max}")
    guard = 64
    for _ in range(5):
        ctx = make_context(precision + guard)
        xv = to_mpf(ctx, x)
        num, den = _shifted_quotient(kind, ctx, xv, n_max + 1)
        if abs(den[0]) < _pole_tolerance(ctx, precision):
            raise PoleError(f"{kind.value} has a pole near x = {ctx.nstr(xv, 15)}")
        coeffs, errs = _divide_with_bound(num, den, ctx, n_max + 1)
        limit = ctx.ldexp(1, -precision - 4)
        ok = True
        values = []
        fact = ctx.one
        for n, (c, e) in enumerate(zip(coeffs, errs)):
            if n:
                fact *= n
            v = c * fact
            if e * fact > limit * max(1, abs(v)):
                ok = False
                break
            values.append(v)
        if ok:
            out = make_context(precision)
            return [BigFloat(out.mpf(v), precision) for v in values]
        guard *= 2
    raise DivergenceError(
        f"series division for {kind.value} at x = {ctx.nstr(xv, 15)} lost too much precision for n_max = {n_max}"
    )


# Stirling-number closed form for the cotangent.

def adamchik_cot_closed_form(n: int, u) -> Fraction:
    """(2i)^n (u - i) sum_{k=1..n} (k!/2^k) {n,k} (iu - 1)^k at u = cot x, exactly.

    With u = p/q, multiplying the sum by (2q)^n clears every denominator, so
    the computation stays in Gaussian integers until one final division:
    the result is i^n (p - iq) A / q^(n+1) with
    A = sum k! {n,k} 2^(n-k) q^(n-k) (ip - q)^k.
    """
    if n < 1:
        raise DomainError(f"n must be at least 1, got {n}")
    u = Fraction(u)
    p, q = u.numerator, u.denominator
    st = build_stirling_subset_triangle(n)
    w = GaussianInt(-q, p)
    acc = GaussianInt()
    w_pow = GaussianInt(1, 0)
    for k in range(1, n + 1):
        w_pow = w_pow * w
        acc = acc + math.factorial(k) * st(n, k) * (2 * q) ** (n - k) * w_pow
    total = I**n * GaussianInt(p, -q) * acc
    if total.im:
        raise NonRealResult(f"imaginary part {total.im} for n={n}, u={u}")
    return Fraction(total.re, q ** (n + 1))
