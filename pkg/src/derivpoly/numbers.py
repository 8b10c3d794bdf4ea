"""Tangent and secant numbers of order k, Stirling subset numbers.

The triangles are built by integer recurrences obtained by differentiating
``tan^k`` and ``sec*tan^k``:

    d/dt tan^k       = k tan^(k-1) + k tan^(k+1)
    d/dt sec tan^k   = k sec tan^(k-1) + (k+1) sec tan^(k+1)

Reading off Maclaurin coefficients gives

    T(n+1, k) = k (T(n, k-1) + T(n, k+1))
    S(n+1, k) = k S(n, k-1) + (k+1) S(n, k+1)

seeded with T(0,0) = S(0,0) = 1 (tan^0 = 1).  ``egf_coefficients`` is the
independent route: plain exact power-series arithmetic on sin and cos.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class TriangleKind(str, enum.Enum):
    TANGENT = "tangent"
    SECANT = "secant"
    STIRLING = "stirling"


class SeriesFamily(str, enum.Enum):
    TAN_POWER = "tan_power"
    SEC_TAN_POWER = "sec_tan_power"


_DECIMAL = {"type": "string", "pattern": "^-?[0-9]+$"}

TRIANGLE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "kind": {"enum": [k.value for k in TriangleKind]},
        "max_n": {"type": "integer", "minimum": 0},
        "rows": {"type": "array", "items": {"type": "array", "items": _DECIMAL}},
    },
    "required": ["kind", "max_n", "rows"],
    "additionalProperties": False,
}


@dataclass(frozen=True)
class NumberTriangle:
    """Ragged table ``rows[n][k]`` for ``0 <= k <= n <= max_n``.

    Lookups outside the stored range return 0, which keeps recurrence edges
    and the closed-form sums free of bounds checks.
    """

    kind: TriangleKind
    rows: tuple[tuple[int, ...], ...]

    @property
    def max_n(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, k: int) -> int:
        return self.entry(n, k)

    def entry(self, n: int, k: int) -> int:
        if n < 0 or k < 0 or k > n:
            return 0
        if n > self.max_n:
            raise IndexError(f"{self.kind.value} triangle built only to n={self.max_n}, asked for n={n}")
        return self.rows[n][k]

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]

    def column(self, k: int) -> list[int]:
        return [self.entry(n, k) for n in range(self.max_n + 1)]

    def nonzero_entries(self):
        for n, row in enumerate(self.rows):
            for k, v in enumerate(row):
                if v:
                    yield n, k, v

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind.value,
            "max_n": self.max_n,
            "rows": [[str(v) for v in row] for row in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "NumberTriangle":
        rows = tuple(tuple(int(v) for v in row) for row in obj["rows"])
        if len(rows) != obj["max_n"] + 1:
            raise ValueError("max_n does not match the number of rows")
        return cls(TriangleKind(obj["kind"]), rows)

    def to_latex(self) -> str:
        """An ``array`` with one row per n; cells above the diagonal stay blank."""
        width = self.max_n + 1
        lines = [r"\begin{array}{r|" + "r" * width + "}", "n \\backslash k & " + " & ".join(map(str, range(width))) + r" \\ \hline"]
        for n, row in enumerate(self.rows):
            cells = [str(v) for v in row] + [""] * (width - len(row))
            lines.append(f"{n} & " + " & ".join(cells) + r" \\")
        lines.append(r"\end{array}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k", "value"])
        for n, k, v in self.nonzero_entries():
            w.writerow([n, k, v])
        return buf.getvalue()


def _check_max_n(max_n: int) -> int:
    if max_n < 0:
        raise ValueError(f"max_n must be nonnegative, got {max_n}")
    return max_n


def build_tangent_triangle(max_n: int) -> NumberTriangle:
    _check_max_n(max_n)
    rows = [(1,)]
    for n in range(max_n):
        prev = rows[-1]
        get = lambda k: prev[k] if 0 <= k <= n else 0  # noqa: E731
        rows.append(tuple(k * (get(k - 1) + get(k + 1)) for k in range(n + 2)))
    return NumberTriangle(TriangleKind.TANGENT, tuple(rows))


def build_secant_triangle(max_n: int) -> NumberTriangle:
    _check_max_n(max_n)
    rows = [(1,)]
    for n in range(max_n):
        prev = rows[-1]
        get = lambda k: prev[k] if 0 <= k <= n else 0  # noqa: E731
        rows.append(tuple(k * get(k - 1) + (k + 1) * get(k + 1) for k in range(n + 2)))
    return NumberTriangle(TriangleKind.SECANT, tuple(rows))


def build_stirling_subset_triangle(max_n: int) -> NumberTriangle:
    _check_max_n(max_n)
    rows = [(1,)]
    for n in range(1, max_n + 1):
        prev = rows[-1]
        get = lambda k: prev[k] if 0 <= k < n else 0  # noqa: E731
        rows.append(tuple(k * get(k) + get(k - 1) for k in range(n + 1)))
    return NumberTriangle(TriangleKind.STIRLING, tuple(rows))


BUILDERS = {
    TriangleKind.TANGENT: build_tangent_triangle,
    TriangleKind.SECANT: build_secant_triangle,
    TriangleKind.STIRLING: build_stirling_subset_triangle,
}


def build_triangle(kind: TriangleKind | str, max_n: int) -> NumberTriangle:
    return BUILDERS[TriangleKind(kind)](max_n)


# Exact truncated power series, lists of Fractions of a fixed length.

def _series_mul(a: Sequence[Fraction], b: Sequence[Fraction], n_terms: int) -> list[Fraction]:
    out = [Fraction(0)] * n_terms
    for i, x in enumerate(a[:n_terms]):
        if x:
            for j in range(min(len(b), n_terms - i)):
                out[i + j] += x * b[j]
    return out


def _series_div(a: Sequence[Fraction], b: Sequence[Fraction], n_terms: int) -> list[Fraction]:
    if b[0] == 0:
        raise ZeroDivisionError("series denominator has zero constant term")
    out: list[Fraction] = []
    for n in range(n_terms):
        acc = a[n] if n < len(a) else Fraction(0)
        for j in range(1, min(n, len(b) - 1) + 1):
            acc -= b[j] * out[n - j]
        out.append(acc / b[0])
    return out


def sin_series(n_terms: int) -> list[Fraction]:
    return [
        Fraction((-1) ** (n // 2), math.factorial(n)) if n % 2 else Fraction(0)
        for n in range(n_terms)
    ]


def cos_series(n_terms: int) -> list[Fraction]:
    return [
        Fraction((-1) ** (n // 2), math.factorial(n)) if n % 2 == 0 else Fraction(0)
        for n in range(n_terms)
    ]


def egf_coefficients(family: SeriesFamily | str, k: int, n_max: int) -> list[Fraction]:
    """Maclaurin coefficients of ``tan^k`` or ``sec*tan^k`` up to ``t**n_max``.

    Entry ``n`` times ``n!`` is T(n, k) resp. S(n, k).
    """
    family = SeriesFamily(family)
    if family is SeriesFamily.TAN_POWER and k < 1:
        raise ValueError(f"tan^k series needs k >= 1, got {k}")
    if k < 0:
        raise ValueError(f"sec*tan^k series needs k >= 0, got {k}")
    if n_max < k:
        raise ValueError(f"n_max must be at least k ({k}), got {n_max}")

    size = n_max + 1
    s, c = sin_series(size), cos_series(size)
    tan = _series_div(s, c, size)
    if family is SeriesFamily.TAN_POWER:
        acc = tan
        remaining = k - 1
    else:
        acc = _series_div([Fraction(1)], c, size)
        remaining = k
    for _ in range(remaining):
        acc = _series_mul(acc, tan, size)
    return acc


def classical_sequences(max_n: int) -> tuple[list[int], list[int]]:
    """Tangent numbers T(n,1) and Euler (secant) numbers S(n,0) for n = 0..max_n."""
    _check_max_n(max_n)
    return (
        build_tangent_triangle(max_n).column(1),
        build_secant_triangle(max_n).column(0),
    )
