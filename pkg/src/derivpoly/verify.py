"""Property suites behind ``derivpoly verify``.

Each suite yields ``CaseResult`` records; ``run_suites`` returns them sorted
by ``(suite, case)`` so the report is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import IntPolynomial
from .calculus import (
    DerivKind,
    adamchik_cot_closed_form,
    central_difference,
    nth_derivative_exact,
    nth_derivative_numeric,
    taylor_addition_oracle,
)
from .errors import DerivPolyError
from .numbers import SeriesFamily, build_secant_triangle, build_tangent_triangle, egf_coefficients
from .polys import (
    PolyFamily,
    derivative_polynomial_closed,
    derivative_polynomial_recurrence,
    triangles,
)
from .zeta import reflection_identity

# Reference table of the first seven polynomials of each family, trigonometric signs.
# Hyperbolic counterparts take the lower sign of each +/-, see golden().
GOLDEN_P = {
    0: [0, 1],
    1: [1, 0, 1],
    2: [0, 2, 0, 2],
    3: [2, 0, 8, 0, 6],
    4: [0, 16, 0, 40, 0, 24],
    5: [16, 0, 136, 0, 240, 0, 120],
    6: [0, 272, 0, 1232, 0, 1680, 0, 720],
}
GOLDEN_Q = {
    0: [1],
    1: [0, 1],
    2: [1, 0, 2],
    3: [0, 5, 0, 6],
    4: [5, 0, 28, 0, 24],
    5: [0, 61, 0, 180, 0, 120],
    6: [61, 0, 662, 0, 1320, 0, 720],
}
# Exponents whose coefficient carries the +/- (upper sign trig, lower hyperbolic).
GOLDEN_PM_P = {0: (), 1: (2,), 2: (1,), 3: (4, 0), 4: (3,), 5: (6, 2), 6: (5, 1)}
GOLDEN_PM_Q = {0: (), 1: (1,), 2: (0,), 3: (3,), 4: (2,), 5: (5, 1), 6: (4, 0)}


def golden(family: PolyFamily, n: int) -> IntPolynomial:
    family = PolyFamily(family)
    base = GOLDEN_P if family.is_tangent_type else GOLDEN_Q
    flips = GOLDEN_PM_P if family.is_tangent_type else GOLDEN_PM_Q
    coeffs = list(base[n])
    if family.is_hyperbolic:
        for e in flips[n]:
            coeffs[e] = -coeffs[e]
    return IntPolynomial(coeffs)


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    passed: bool
    detail: str = ""

    def to_json_obj(self) -> dict:
        return {"suite": self.suite, "case": self.case, "passed": self.passed, "detail": self.detail}


def _case(suite: str, case: str, check: Callable[[], str | bool]) -> CaseResult:
    try:
        out = check()
    except (DerivPolyError, ArithmeticError, ValueError) as exc:
        return CaseResult(suite, case, False, f"{type(exc).__name__}: {exc}")
    if out is True or out == "":
        return CaseResult(suite, case, True)
    return CaseResult(suite, case, False, out if isinstance(out, str) else "check failed")


def suite_golden(max_n: int) -> Iterator[CaseResult]:
    for family in PolyFamily:
        for n in range(7):
            want = golden(family, n)
            yield _case("golden", f"{family.value}_{n}", lambda: (
                derivative_polynomial_closed(family, n) == want
                and derivative_polynomial_recurrence(family, n) == want
            ))


def suite_dual(max_n: int) -> Iterator[CaseResult]:
    for family in PolyFamily:
        def check(family=family):
            for n in range(max_n + 1):
                if derivative_polynomial_closed(family, n) != derivative_polynomial_recurrence(family, n):
                    return f"mismatch at n={n}"
            return True
        yield _case("dual", f"{family.value}[0..{max_n}]", check)


def suite_egf(max_n: int) -> Iterator[CaseResult]:
    bound = min(max_n, 30)
    T, S = build_tangent_triangle(bound), build_secant_triangle(bound)

    def check(family, tri, k_min):
        for k in range(k_min, bound + 1):
            coeffs = egf_coefficients(family, k, bound)
            for n in range(bound + 1):
                if coeffs[n] * math.factorial(n) != tri(n, k):
                    return f"k={k}, n={n}"
        return True

    yield _case("egf", f"tangent[0..{bound}]", lambda: check(SeriesFamily.TAN_POWER, T, 1))
    yield _case("egf", f"secant[0..{bound}]", lambda: check(SeriesFamily.SEC_TAN_POWER, S, 0))


def suite_classical(max_n: int) -> Iterator[CaseResult]:
    T, S = build_tangent_triangle(9), build_secant_triangle(8)
    yield _case("classical", "tangent_numbers", lambda: [T(n, 1) for n in (1, 3, 5, 7, 9)] == [1, 2, 16, 272, 7936])
    yield _case("classical", "euler_numbers", lambda: [S(n, 0) for n in (0, 2, 4, 6, 8)] == [1, 1, 5, 61, 1385])


def suite_divisibility(max_n: int) -> Iterator[CaseResult]:
    def check():
        T = build_tangent_triangle(max_n + 1)
        for n in range(max_n + 1):
            for k in range(1, n + 2):
                if T(n + 1, k) % k:
                    return f"{k} does not divide T({n + 1},{k})"
        for n in range(1, max_n + 2):
            if T(n, n) != math.factorial(n):
                return f"T({n},{n}) != {n}!"
        return True

    yield _case("divisibility", f"T[0..{max_n + 1}]", check)


def suite_symmetry(max_n: int) -> Iterator[CaseResult]:
    for family in PolyFamily:
        def check(family=family):
            for n in range(max_n + 1):
                p = derivative_polynomial_closed(family, n)
                odd_sign = n + 1 if family.is_tangent_type else n
                if p.reflect() != p * (-1) ** odd_sign:
                    return f"parity fails at n={n}"
                if family is PolyFamily.P and p[0] != triangles.tangent(n)(n, 1):
                    return f"P_{n}(0) != T({n},1)"
                if family is PolyFamily.Q and p[0] != triangles.secant(n)(n, 0):
                    return f"Q_{n}(0) != S({n},0)"
                if p.degree != family.expected_degree(n) or abs(p.coeffs[-1]) != math.factorial(n):
                    return f"degree/leading coefficient wrong at n={n}"
            return True
        yield _case("symmetry", f"{family.value}[0..{max_n}]", check)


def transport_holds(trig: IntPolynomial, hyper: IntPolynomial, shift: int) -> bool:
    """Coefficientwise form of hyper(x) = i^shift trig(i x).

    Coefficient k picks up i^(shift+k); that power must be a real unit
    wherever trig has a nonzero coefficient.
    """
    if len(trig) != len(hyper):
        return False
    for k in range(len(trig)):
        e = shift + k
        if trig[k] == 0:
            if hyper[k] != 0:
                return False
            continue
        if e % 2:
            return False
        if hyper[k] != (-1) ** (e // 2) * trig[k]:
            return False
    return True


def suite_transport(max_n: int) -> Iterator[CaseResult]:
    def check(trig_family, hyper_family, offset):
        for n in range(max_n + 1):
            t = derivative_polynomial_recurrence(trig_family, n)
            h = derivative_polynomial_recurrence(hyper_family, n)
            if not transport_holds(t, h, n + offset):
                return f"n={n}"
        return True

    yield _case("transport", f"HyperP=i^(n-1)P(ix)[0..{max_n}]", lambda: check(PolyFamily.P, PolyFamily.HyperP, -1))
    yield _case("transport", f"HyperQ=i^n Q(ix)[0..{max_n}]", lambda: check(PolyFamily.Q, PolyFamily.HyperQ, 0))

    def cot_tan():
        for n in range(max_n + 1):
            for u in (Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 7)):
                if nth_derivative_exact(DerivKind.COT, n, u).coefficient != (-1) ** n * nth_derivative_exact(DerivKind.TAN, n, u).coefficient:
                    return f"n={n}, u={u}"
        return True

    yield _case("transport", f"cot=(-1)^n tan[0..{max_n}]", cot_tan)


ADAMCHIK_GRID = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(2), Fraction(-2), Fraction(3, 7))


def suite_adamchik(max_n: int) -> Iterator[CaseResult]:
    bound = min(max_n, 40)
    for u in ADAMCHIK_GRID:
        def check(u=u):
            for n in range(1, bound + 1):
                if adamchik_cot_closed_form(n, u) != nth_derivative_exact(DerivKind.COT, n, u).coefficient:
                    return f"n={n}"
            return True
        yield _case("adamchik", f"u={u}", check)


def oracle_grid(kind: DerivKind) -> tuple[Fraction, ...]:
    """Ten points per kind, each well away from that kind's poles."""
    if kind in (DerivKind.COT, DerivKind.CSC):
        tenths = (-29, -21, -15, -7, -2, 3, 8, 15, 22, 29)
    elif kind in (DerivKind.COTH, DerivKind.CSCH):
        tenths = (-25, -12, -6, -3, -1, 1, 4, 9, 16, 30)
    else:
        tenths = (-13, -9, -5, -2, 1, 4, 6, 9, 11, 14)
    return tuple(Fraction(t, 10) for t in tenths)


def suite_oracle(max_n: int, precision: int = 256) -> Iterator[CaseResult]:
    bound = min(max_n, 20)
    for kind in DerivKind:
        def check(kind=kind):
            for x in oracle_grid(kind):
                ref = taylor_addition_oracle(kind, x, bound, precision)
                for n in range(bound + 1):
                    got = nth_derivative_numeric(kind, n, x, precision).value
                    want = ref[n].value
                    if abs(got - want) > max(1, abs(want)) * 2.0 ** -(precision - 48):
                        return f"x={x}, n={n}"
            return True
        yield _case("oracle", f"{kind.value}[0..{bound}]@{precision}", check)

    fd_bound = min(max_n, 4)
    for kind in DerivKind:
        def fd(kind=kind):
            for x in oracle_grid(kind):
                for n in range(1, fd_bound + 1):
                    got = nth_derivative_numeric(kind, n, x, precision).value
                    approx = central_difference(kind, n, x, precision).value
                    if abs(got - approx) > max(1, abs(got)) * 2.0**-60:
                        return f"x={x}, n={n}"
            return True
        yield _case("finite_difference", f"{kind.value}[1..{fd_bound}]", fd)


ZETA_POINTS = (Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(5, 6))


def suite_zeta(max_n: int, precision: int = 128) -> Iterator[CaseResult]:
    for n in range(2, 9):
        def check(n=n):
            for x in ZETA_POINTS:
                r = reflection_identity(n, x, precision)
                if r.residual.value >= 2.0 ** -(precision - 16):
                    return f"x={x}: residual {r.residual.to_string(5)}"
            return True
        yield _case("zeta", f"n={n}@{precision}", check)


SUITES: dict[str, Callable[[int], Iterator[CaseResult]]] = {
    "golden": suite_golden,
    "dual": suite_dual,
    "egf": suite_egf,
    "classical": suite_classical,
    "divisibility": suite_divisibility,
    "symmetry": suite_symmetry,
    "transport": suite_transport,
    "adamchik": suite_adamchik,
    "oracle": suite_oracle,
    "zeta": suite_zeta,
}


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "passed": {"type": "boolean"},
        "cases": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "suite": {"enum": list(SUITES)},
                    "case": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "detail": {"type": "string"},
                },
                "required": ["suite", "case", "passed", "detail"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["passed", "cases"],
    "additionalProperties": False,
}


@dataclass
class Report:
    results: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json_obj(self) -> dict:
        return {"passed": self.passed, "cases": [r.to_json_obj() for r in self.results]}


def run_suites(names, max_n: int = 100) -> Report:
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    names = list(SUITES) if "all" in names else list(names)
    results = []
    for name in names:
        results.extend(SUITES[name](max_n))
    results.sort(key=lambda r: (r.suite, r.case))
    return Report(results)
