"""Derivative polynomials of tan, sec, tanh and sech.

Two independent constructions are kept side by side: the closed forms in
terms of T(n,k) and S(n,k), and the chain-rule recurrences

    P_n  = (1+x^2) P_{n-1}'            P_0 = x
    Q_n  = (1+x^2) Q_{n-1}' + x Q_{n-1}  Q_0 = 1
    HP_n = (1-x^2) HP_{n-1}'           HP_0 = x
    HQ_n = (1-x^2) HQ_{n-1}' - x HQ_{n-1} HQ_0 = 1
"""

from __future__ import annotations

import csv
import enum
import io
import json
import re
import threading
from dataclasses import dataclass

from .algebra import X, IntPolynomial, poly_derivative
from .errors import InvariantError
from .numbers import NumberTriangle, build_secant_triangle, build_tangent_triangle


class PolyFamily(str, enum.Enum):
    P = "P"
    Q = "Q"
    HyperP = "HyperP"
    HyperQ = "HyperQ"

    @property
    def is_tangent_type(self) -> bool:
        return self in (PolyFamily.P, PolyFamily.HyperP)

    @property
    def is_hyperbolic(self) -> bool:
        return self in (PolyFamily.HyperP, PolyFamily.HyperQ)

    def expected_degree(self, n: int) -> int:
        return n + 1 if self.is_tangent_type else n


def parse_family(name: str) -> PolyFamily:
    aliases = {"p": "P", "q": "Q", "hyperp": "HyperP", "hyperq": "HyperQ", "hp": "HyperP", "hq": "HyperQ"}
    try:
        return PolyFamily(aliases.get(name.lower(), name))
    except ValueError:
        raise ValueError(f"unknown polynomial family {name!r}") from None


class _TriangleCache:
    """Deepest tangent/secant triangles built so far.

    Readers get an immutable triangle; a deeper request builds a fresh one
    under the lock and swaps it in.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._tangent: NumberTriangle | None = None
        self._secant: NumberTriangle | None = None

    def tangent(self, depth: int) -> NumberTriangle:
        t = self._tangent
        if t is None or t.max_n < depth:
            with self._lock:
                t = self._tangent
                if t is None or t.max_n < depth:
                    t = self._tangent = build_tangent_triangle(max(depth, 2 * t.max_n if t else 0, 16))
        return t

    def secant(self, depth: int) -> NumberTriangle:
        s = self._secant
        if s is None or s.max_n < depth:
            with self._lock:
                s = self._secant
                if s is None or s.max_n < depth:
                    s = self._secant = build_secant_triangle(max(depth, 2 * s.max_n if s else 0, 16))
        return s


triangles = _TriangleCache()


def _sign(exponent_twice: int) -> int:
    """(-1)**(exponent_twice / 2), refusing half-integer exponents."""
    if exponent_twice % 2:
        raise InvariantError(f"half-integer sign exponent {exponent_twice}/2 on a nonzero term")
    return -1 if (exponent_twice // 2) % 2 else 1


def _tangent_type_terms(n: int, hyperbolic: bool, T: NumberTriangle) -> list[tuple[int, int]]:
    terms = []
    const = T(n, 1)
    if const:
        terms.append((0, _sign(n - 1) * const if hyperbolic else const))
    for k in range(1, n + 2):
        t = T(n + 1, k)
        if not t:
            continue
        q, r = divmod(t, k)
        if r:
            raise InvariantError(f"T({n + 1},{k}) = {t} is not divisible by {k}")
        terms.append((k, _sign(n + k - 1) * q if hyperbolic else q))
    return terms


def _secant_type_terms(n: int, hyperbolic: bool, S: NumberTriangle) -> list[tuple[int, int]]:
    terms = []
    for k in range(n + 1):
        s = S(n, k)
        if s:
            terms.append((k, _sign(n + k) * s if hyperbolic else s))
    return terms


def derivative_polynomial_closed(family: PolyFamily | str, n: int) -> IntPolynomial:
    """Build the n-th derivative polynomial from the tangent/secant triangles."""
    family = PolyFamily(family)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if family.is_tangent_type:
        terms = _tangent_type_terms(n, family.is_hyperbolic, triangles.tangent(n + 1))
    else:
        terms = _secant_type_terms(n, family.is_hyperbolic, triangles.secant(n))
    return IntPolynomial.from_terms(terms)


_ONE_PLUS_X2 = IntPolynomial([1, 0, 1])
_ONE_MINUS_X2 = IntPolynomial([1, 0, -1])


def _step(family: PolyFamily, p: IntPolynomial) -> IntPolynomial:
    dp = poly_derivative(p)
    if family is PolyFamily.P:
        return _ONE_PLUS_X2 * dp
    if family is PolyFamily.Q:
        return _ONE_PLUS_X2 * dp + X * p
    if family is PolyFamily.HyperP:
        return _ONE_MINUS_X2 * dp
    return _ONE_MINUS_X2 * dp - X * p


_SEEDS = {
    PolyFamily.P: X,
    PolyFamily.Q: IntPolynomial([1]),
    PolyFamily.HyperP: X,
    PolyFamily.HyperQ: IntPolynomial([1]),
}


class _RecurrenceMemo:
    """Per-family list of recurrence iterates; concurrent readers, one writer."""

    def __init__(self):
        self._lock = threading.Lock()
        self._seq: dict[PolyFamily, tuple[IntPolynomial, ...]] = {f: (s,) for f, s in _SEEDS.items()}

    def get(self, family: PolyFamily, n: int) -> IntPolynomial:
        seq = self._seq[family]
        if n < len(seq):
            return seq[n]
        with self._lock:
            seq = list(self._seq[family])
            while len(seq) <= n:
                seq.append(_step(family, seq[-1]))
            self._seq[family] = tuple(seq)
        return seq[n]


_memo = _RecurrenceMemo()


def derivative_polynomial_recurrence(family: PolyFamily | str, n: int) -> IntPolynomial:
    """n-th iterate of the chain-rule recurrence (memoized)."""
    family = PolyFamily(family)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _memo.get(family, n)


def derivative_polynomial(family: PolyFamily | str, n: int, method: str = "closed") -> IntPolynomial:
    if method == "closed":
        return derivative_polynomial_closed(family, n)
    if method == "recurrence":
        return derivative_polynomial_recurrence(family, n)
    raise ValueError(f"unknown construction method {method!r}")


@dataclass(frozen=True)
class ParityForm:
    family: PolyFamily
    n: int
    terms: tuple[tuple[int, int], ...]

    def to_polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_terms(self.terms)

    @property
    def parity(self) -> int:
        """0 if every exponent is even, 1 if every exponent is odd."""
        parities = {e % 2 for e, _ in self.terms}
        if len(parities) != 1:
            raise InvariantError(f"mixed exponent parity in {self.family.value}_{self.n}")
        return parities.pop()


def parity_form(family: PolyFamily | str, n: int) -> ParityForm:
    """Nonzero terms only, walking just the parity-surviving indices.

    For odd n the tangent-type polynomial is T(n,1) plus even powers built
    from T(n+1, 2r); for even n it only has odd powers from T(n+1, 2r+1).
    Secant-type polynomials keep the exponents congruent to n.
    """
    family = PolyFamily(family)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    hyper = family.is_hyperbolic
    terms = []
    if family.is_tangent_type:
        T = triangles.tangent(n + 1)
        if n % 2:
            terms.append((0, (_sign(n - 1) if hyper else 1) * T(n, 1)))
        for k in range(2 if n % 2 else 1, n + 2, 2):
            q, r = divmod(T(n + 1, k), k)
            if r:
                raise InvariantError(f"T({n + 1},{k}) is not divisible by {k}")
            terms.append((k, (_sign(n + k - 1) if hyper else 1) * q))
    else:
        S = triangles.secant(n)
        for k in range(n % 2, n + 1, 2):
            terms.append((k, (_sign(n + k) if hyper else 1) * S(n, k)))
    return ParityForm(family, n, tuple((e, c) for e, c in terms if c))


# Serialization.

POLYNOMIAL_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "family": {"enum": [f.value for f in PolyFamily]},
        "n": {"type": "integer", "minimum": 0},
        "coefficients": {"type": "array", "items": {"type": "string", "pattern": "^-?[0-9]+$"}},
    },
    "required": ["family", "n", "coefficients"],
    "additionalProperties": False,
}

POLYNOMIAL_LIST_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "array",
    "items": POLYNOMIAL_SCHEMA,
}


def to_json_obj(family: PolyFamily, n: int, p: IntPolynomial) -> dict:
    return {"family": PolyFamily(family).value, "n": n, "coefficients": [str(v) for v in p.coeffs]}


def to_json(family: PolyFamily, n: int, p: IntPolynomial) -> str:
    return json.dumps(to_json_obj(family, n, p))


def from_json_obj(obj: dict) -> tuple[PolyFamily, int, IntPolynomial]:
    return PolyFamily(obj["family"]), int(obj["n"]), IntPolynomial(int(v) for v in obj["coefficients"])


def to_csv_rows(family: PolyFamily, n: int, p: IntPolynomial) -> list[list]:
    return [[PolyFamily(family).value, n, k, v] for k, v in p.terms()]


def to_csv(items) -> str:
    """``items`` is an iterable of ``(family, n, polynomial)``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "exponent", "coefficient"])
    for family, n, p in items:
        w.writerows(to_csv_rows(family, n, p))
    return buf.getvalue()


def to_latex(p: IntPolynomial, var: str = "x") -> str:
    """Descending powers with explicit signs, e.g. ``24 x^4 - 28 x^2 + 5``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in reversed(p.terms()):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = var if e == 1 else f"{var}^{{{e}}}" if e >= 10 else f"{var}^{e}"
            body = power if mag == 1 else f"{mag} {power}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*(?:(?P<var>[a-z])(?:\^(?:\{(?P<eb>\d+)\}|(?P<e>\d)))?)?\s*"
)


def parse_latex(text: str, var: str = "x") -> IntPolynomial:
    """Inverse of ``to_latex``."""
    text = text.strip()
    if text == "0":
        return IntPolynomial()
    terms = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        sign, digits = m.group(1), m.group(2)
        if m.group("var") is None and digits is None:
            raise ValueError(f"empty term at {text[pos:]!r}")
        if m.group("var") not in (None, var):
            raise ValueError(f"unexpected variable {m.group('var')!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if m.group("var") is None:
            e = 0
        else:
            e = int(m.group("eb") or m.group("e") or 1)
        terms.append((e, coeff))
        pos = m.end()
    return IntPolynomial.from_terms(terms)
