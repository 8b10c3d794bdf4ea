"""Hurwitz zeta by Euler-Maclaurin, and the cotangent reflection check.

For integer n >= 2 and 0 < x < 1,

    zeta(n, 1-x) + (-1)^n zeta(n, x)
        = (-1)^n pi^n / (n-1)! * [T(n-1,1) + sum_{k=1..n} T(n,k)/k cot^k(pi x)]

i.e. the (n-1)-th derivative of pi*cot(pi x) written through the tangent
numbers of order k.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .algebra import GUARD_BITS, BigFloat, check_precision, horner_mpf, make_context
from .errors import DomainError
from .polys import PolyFamily, derivative_polynomial_closed

LHS_READING = "corrected-lhs"


class _BernoulliCache:
    """Exact B_0, B_1, ... with B_1 = -1/2; grown under a lock, read freely."""

    def __init__(self):
        self._lock = threading.Lock()
        self._values: tuple[Fraction, ...] = (Fraction(1),)

    def upto(self, m: int) -> tuple[Fraction, ...]:
        values = self._values
        if len(values) > m:
            return values
        with self._lock:
            b = list(self._values)
            while len(b) <= m:
                k = len(b)
                b.append(-sum(math.comb(k + 1, j) * b[j] for j in range(k)) / (k + 1))
            self._values = values = tuple(b)
        return values


bernoulli_numbers = _BernoulliCache()


def bernoulli(m: int) -> Fraction:
    return bernoulli_numbers.upto(m)[m]


@dataclass(frozen=True)
class ZetaQuery:
    s: int
    a: Fraction
    precision: int = 128

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 2:
            raise DomainError(f"s must be an integer >= 2, got {self.s}")
        a = Fraction(self.a)
        if not 0 < a <= 1:
            raise DomainError(f"a must lie in (0, 1], got {a}")
        object.__setattr__(self, "a", a)
        check_precision(self.precision)


def _zeta_em(s: int, a, ctx):
    """Euler-Maclaurin sum at the precision of ``ctx``; ``a`` is an mpf > 0."""
    tol_bits = ctx.prec + 8
    cutoff = max(16, ctx.prec // 4)
    while True:
        head = ctx.fsum((m + a) ** (-s) for m in range(cutoff))
        tol = ctx.ldexp(max(1, abs(head)), -tol_bits)
        big_n = cutoff + a
        total = head + big_n ** (1 - s) / (s - 1) + big_n ** (-s) / 2
        rising = ctx.mpf(s)  # s (s+1) ... (s+2j-2)
        power = big_n ** (-s - 1)
        prev = None
        j = 1
        while True:
            coef = bernoulli(2 * j) / math.factorial(2 * j)
            term = ctx.mpf(coef.numerator) / coef.denominator * rising * power
            if abs(term) < tol:
                return total
            if prev is not None and abs(term) >= abs(prev):
                break
            total += term
            prev = term
            rising *= (s + 2 * j - 1) * (s + 2 * j)
            power /= big_n**2
            j += 1
        cutoff *= 2


def euler_maclaurin_zeta(s: int, a, precision: int = 128) -> BigFloat:
    """zeta(s, a) for integer s >= 2 and any rational or float a > 0."""
    precision = check_precision(precision)
    if int(s) != s or s < 2:
        raise DomainError(f"s must be an integer >= 2, got {s}")
    ctx = make_context(precision + GUARD_BITS)
    av = ctx.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else ctx.mpf(a)
    if av <= 0:
        raise DomainError(f"a must be positive, got {a}")
    return BigFloat(make_context(precision).mpf(_zeta_em(int(s), av, ctx)), precision)


def hurwitz_zeta(q: ZetaQuery) -> BigFloat:
    return euler_maclaurin_zeta(q.s, q.a, q.precision)


REFLECTION_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "x": {"type": "string", "pattern": "^[0-9]+(/[0-9]+)?$"},
        "lhs": {"type": "string"},
        "rhs": {"type": "string"},
        "residual": {"type": "string"},
        "precision": {"type": "integer", "minimum": 64},
        "lhs_reading": {"const": LHS_READING},
    },
    "required": ["n", "x", "lhs", "rhs", "residual", "precision", "lhs_reading"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class ReflectionCheck:
    n: int
    x: Fraction
    lhs: BigFloat
    rhs: BigFloat
    residual: BigFloat
    precision: int
    lhs_reading: str = LHS_READING

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "x": str(self.x),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "residual": self.residual.to_string(10),
            "precision": self.precision,
            "lhs_reading": self.lhs_reading,
        }


def reflection_identity(n: int, x, precision: int = 128) -> ReflectionCheck:
    """Evaluate both sides of the reflection identity at ``precision + 32`` bits."""
    precision = check_precision(precision)
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n}")
    x = Fraction(x)
    if not 0 < x < 1:
        raise DomainError(f"x must lie strictly between 0 and 1, got {x}")
    n = int(n)
    ctx = make_context(precision + GUARD_BITS)
    xv = ctx.mpf(x.numerator) / x.denominator
    sign = -1 if n % 2 else 1
    lhs = _zeta_em(n, 1 - xv, ctx) + sign * _zeta_em(n, xv, ctx)

    # T(n-1,1) + sum T(n,k)/k u^k is exactly the closed form of P_{n-1}(u)
    bracket = horner_mpf(derivative_polynomial_closed(PolyFamily.P, n - 1).coeffs, ctx.cot(ctx.pi * xv), ctx)
    rhs = sign * ctx.pi**n / math.factorial(n - 1) * bracket

    out = make_context(precision)
    return ReflectionCheck(
        n=n,
        x=x,
        lhs=BigFloat(out.mpf(lhs), precision),
        rhs=BigFloat(out.mpf(rhs), precision),
        residual=BigFloat(out.mpf(abs(lhs - rhs)), precision),
        precision=precision,
    )


def reflection_identity_residual(n: int, x, precision: int = 128) -> BigFloat:
    return reflection_identity(n, x, precision).residual
