"""Scalar and polynomial substrate.

Python ``int`` already is an arbitrary-precision sign-magnitude integer and
``fractions.Fraction`` keeps itself normalized, so both are used directly.
What lives here is the small amount of structure on top: Gaussian integers,
dense integer polynomials and a precision-tagged binary float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from mpmath.ctx_mp import MPContext

Rational = Fraction

GUARD_BITS = 32
MIN_PRECISION = 64


def make_context(bits: int) -> MPContext:
    """Return a private mpmath context running at ``bits`` of precision.

    Each numeric routine gets its own context so nothing touches mpmath's
    global ``mp`` state.
    """
    ctx = MPContext()
    ctx.prec = bits
    return ctx


def check_precision(bits: int) -> int:
    bits = int(bits)
    if bits < MIN_PRECISION:
        raise ValueError(f"precision must be at least {MIN_PRECISION} bits, got {bits}")
    return bits


@dataclass(frozen=True)
class BigFloat:
    """An mpmath float together with the precision it was rounded to."""

    value: object
    precision: int

    def __post_init__(self):
        check_precision(self.precision)

    @classmethod
    def from_value(cls, x, precision: int) -> "BigFloat":
        ctx = make_context(check_precision(precision))
        return cls(to_mpf(ctx, x), precision)

    def __float__(self) -> float:
        return float(self.value)

    def to_string(self, digits: int | None = None) -> str:
        if digits is None:
            digits = max(1, int(self.precision * 0.30103))
        return make_context(self.precision).nstr(self.value, digits)

    def __str__(self) -> str:
        return self.to_string()


Real = Union[BigFloat, Fraction, int, float, str]


def to_mpf(ctx: MPContext, x) -> object:
    """Convert ``x`` to an mpf of ``ctx``, exactly where ``x`` is exact.

    Fractions are divided at the context precision; ``BigFloat`` values keep
    their stored bits; strings go through mpmath's decimal parser.
    """
    if isinstance(x, BigFloat):
        return ctx.mpf(x.value)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    return ctx.mpf(x)


@dataclass(frozen=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __add__(self, other):
        other = _as_gaussian(other)
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_gaussian(other)
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gaussian(other) - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        return GaussianInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("Gaussian integers are not closed under negative powers")
        result = GaussianInt(1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> "GaussianInt":
        return GaussianInt(self.re, -self.im)


I = GaussianInt(0, 1)


def _as_gaussian(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, int):
        return GaussianInt(x, 0)
    return NotImplemented


class IntPolynomial:
    """Dense polynomial with integer coefficients, ``coeffs[k]`` multiplying ``x**k``.

    Trailing zeros are stripped on construction, so the zero polynomial has
    an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def monomial(cls, coeff: int, exponent: int) -> "IntPolynomial":
        return cls([0] * exponent + [coeff])

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, int]]) -> "IntPolynomial":
        terms = list(terms)
        top = max((e for e, _ in terms), default=-1)
        c = [0] * (top + 1)
        for e, v in terms:
            c[e] += v
        return cls(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == IntPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)!r})"

    def __add__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-v for v in self.coeffs)

    def __sub__(self, other):
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(other * v for v in self.coeffs)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def terms(self) -> list[tuple[int, int]]:
        """Nonzero ``(exponent, coefficient)`` pairs in ascending order."""
        return [(k, v) for k, v in enumerate(self.coeffs) if v]

    def reflect(self) -> "IntPolynomial":
        """Return ``p(-x)``."""
        return IntPolynomial(-v if k & 1 else v for k, v in enumerate(self.coeffs))


def _as_poly(x):
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    return NotImplemented


X = IntPolynomial([0, 1])


def poly_derivative(p: IntPolynomial) -> IntPolynomial:
    return IntPolynomial(k * v for k, v in enumerate(p.coeffs) if k)


def poly_eval_exact(p: IntPolynomial, x) -> Fraction:
    x = Fraction(x)
    acc = Fraction(0)
    for v in reversed(p.coeffs):
        acc = acc * x + v
    return acc


def horner_mpf(coeffs: Sequence[int], x, ctx: MPContext):
    """Horner's rule in ``ctx``; coefficients are converted exactly as needed."""
    acc = ctx.zero
    for v in reversed(coeffs):
        acc = acc * x + v
    return acc


def poly_eval_float(p: IntPolynomial, x: Real, precision: int = 256) -> BigFloat:
    """Evaluate ``p(x)`` with ``GUARD_BITS`` extra working bits, then round."""
    precision = check_precision(precision)
    work = make_context(precision + GUARD_BITS)
    acc = horner_mpf(p.coeffs, to_mpf(work, x), work)
    out = make_context(precision)
    return BigFloat(+out.mpf(acc), precision)
