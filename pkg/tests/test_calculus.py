from fractions import Fraction

import pytest

from derivpoly import calculus
from derivpoly.algebra import BigFloat, make_context
from derivpoly.calculus import (
    DerivKind,
    Prefactor,
    adamchik_cot_closed_form,
    central_difference,
    nth_derivative_exact,
    nth_derivative_numeric,
    taylor_addition_oracle,
)
from derivpoly.errors import DivergenceError, DomainError, PoleError
from derivpoly.polys import derivative_polynomial_closed
from derivpoly.verify import oracle_grid

PREC = 256
CTX = make_context(PREC + 64)


def at(value):
    return BigFloat(CTX.mpf(value) if not callable(value) else value(CTX), PREC + 64)


def test_exact_examples():
    assert nth_derivative_exact(DerivKind.SEC, 2, 0) == calculus.ExactDerivative(Fraction(1), Prefactor.SEC)
    assert nth_derivative_exact(DerivKind.COT, 1, 1) == calculus.ExactDerivative(Fraction(-2), Prefactor.ONE)
    assert nth_derivative_exact(DerivKind.CSCH, 0, 5) == calculus.ExactDerivative(Fraction(1), Prefactor.CSCH)


def test_kind_table():
    one_prefactor = {DerivKind.TAN, DerivKind.COT, DerivKind.TANH, DerivKind.COTH}
    for kind in DerivKind:
        assert (kind.prefactor is Prefactor.ONE) == (kind in one_prefactor)


def test_numeric_examples():
    assert float(nth_derivative_numeric(DerivKind.TAN, 1, 0)) == 1.0
    v = nth_derivative_numeric(DerivKind.COT, 2, at(lambda c: c.pi / 2), PREC)
    assert abs(v.value) < 2.0 ** -(PREC - 8)
    assert nth_derivative_numeric(DerivKind.TANH, 2, 0).value == 0


def test_numeric_reports_precision():
    assert nth_derivative_numeric(DerivKind.SECH, 3, "0.25", 96).precision == 96


def test_oracle_examples():
    assert [float(v) for v in taylor_addition_oracle(DerivKind.TAN, 0, 3)] == [0, 1, 0, 2]
    assert [float(v) for v in taylor_addition_oracle(DerivKind.SEC, 0, 2)] == [1, 0, 1]
    got = taylor_addition_oracle(DerivKind.COT, at(lambda c: c.pi / 4), 1, PREC)[1].value
    assert abs(got + 2) < 2.0 ** -(PREC - 8)


def test_adamchik_examples():
    assert adamchik_cot_closed_form(1, 1) == -2
    assert adamchik_cot_closed_form(2, 1) == 4
    assert adamchik_cot_closed_form(2, 0) == 0
    with pytest.raises(DomainError):
        adamchik_cot_closed_form(0, 1)


@pytest.mark.parametrize("u", [0, 1, -1, Fraction(1, 2), Fraction(-1, 2), 2, -2, Fraction(3, 7)])
def test_adamchik_matches_corollary(u):
    for n in range(1, 26):
        assert adamchik_cot_closed_form(n, u) == nth_derivative_exact(DerivKind.COT, n, u).coefficient


def test_cot_is_signed_tan():
    for n in range(60):
        p_tan = derivative_polynomial_closed(DerivKind.TAN.family, n)
        p_cot = derivative_polynomial_closed(DerivKind.COT.family, n)
        assert p_tan == p_cot
        for u in (Fraction(0), Fraction(5, 3), Fraction(-7, 2)):
            assert nth_derivative_exact(DerivKind.COT, n, u).coefficient == (-1) ** n * nth_derivative_exact(DerivKind.TAN, n, u).coefficient


@pytest.mark.parametrize("kind", list(DerivKind))
def test_parity_in_u(kind):
    for n in range(30):
        for u in (Fraction(2, 3), Fraction(7, 5)):
            a = nth_derivative_exact(kind, n, u).coefficient
            b = nth_derivative_exact(kind, n, -u).coefficient
            parity = n % 2 if kind.prefactor is not Prefactor.ONE else (n + 1) % 2
            assert b == (-1) ** parity * a


@pytest.mark.parametrize("kind", list(DerivKind))
def test_numeric_matches_oracle(kind):
    for x in oracle_grid(kind)[::3]:
        ref = taylor_addition_oracle(kind, x, 12, PREC)
        for n in range(13):
            got = nth_derivative_numeric(kind, n, x, PREC).value
            assert abs(got - ref[n].value) <= max(1, abs(ref[n].value)) * 2.0 ** -(PREC - 48)


@pytest.mark.parametrize("kind", list(DerivKind))
def test_finite_differences(kind):
    for x in oracle_grid(kind)[1::4]:
        for n in range(1, 5):
            got = nth_derivative_numeric(kind, n, x, PREC).value
            fd = central_difference(kind, n, x, PREC).value
            assert abs(got - fd) <= max(1, abs(got)) * 2.0**-60


@pytest.mark.parametrize(
    "kind, point",
    [
        (DerivKind.TAN, lambda c: c.pi / 2),
        (DerivKind.SEC, lambda c: -3 * c.pi / 2),
        (DerivKind.COT, lambda c: c.pi),
        (DerivKind.CSC, lambda c: c.mpf(0)),
        (DerivKind.COTH, lambda c: c.mpf(0)),
        (DerivKind.CSCH, lambda c: c.mpf(0)),
    ],
)
def test_poles_rejected(kind, point):
    with pytest.raises(PoleError):
        nth_derivative_numeric(kind, 3, at(point), PREC)
    with pytest.raises(PoleError):
        taylor_addition_oracle(kind, at(point), 3, PREC)


def test_near_pole_but_outside_tolerance():
    x = at(lambda c: c.pi / 2 - c.ldexp(1, -100))
    v = nth_derivative_numeric(DerivKind.TAN, 0, x, PREC)
    # x is held at 288 working bits, so its distance to the pole is only
    # known to ~2^-188 relative
    assert abs(v.value - CTX.ldexp(1, 100)) < CTX.ldexp(1, 100 - 180)


def test_large_trig_argument_rejected():
    with pytest.raises(DomainError):
        nth_derivative_numeric(DerivKind.TAN, 1, 2**21, PREC)
    nth_derivative_numeric(DerivKind.TANH, 1, 2**21, PREC)


def test_divergence_reported(monkeypatch):
    def hopeless(num, den, ctx, n_terms):
        out, _ = real(num, den, ctx, n_terms)
        return out, [ctx.mpf(1)] * n_terms

    real = calculus._divide_with_bound
    monkeypatch.setattr(calculus, "_divide_with_bound", hopeless)
    with pytest.raises(DivergenceError):
        taylor_addition_oracle(DerivKind.TAN, Fraction(1, 2), 5, PREC)


def test_argument_reduction_far_out():
    # tan has period pi: reduction must agree with a point in the base interval
    x = at(lambda c: 1000 * c.pi + c.mpf(1) / 3)
    a = nth_derivative_numeric(DerivKind.TAN, 3, x, PREC).value
    b = nth_derivative_numeric(DerivKind.TAN, 3, Fraction(1, 3), PREC).value
    assert abs(a - b) < abs(b) * 2.0 ** -(PREC - 40)
