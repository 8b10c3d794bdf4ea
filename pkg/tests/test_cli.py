import io
import json
import subprocess
import sys

import jsonschema
import pytest

from derivpoly.calculus import DERIVATIVE_SCHEMA
from derivpoly.cli import PRECISION_ENV, run
from derivpoly.numbers import TRIANGLE_SCHEMA
from derivpoly.polys import POLYNOMIAL_LIST_SCHEMA, POLYNOMIAL_SCHEMA, parse_latex
from derivpoly.verify import REPORT_SCHEMA
from derivpoly.zeta import REFLECTION_SCHEMA


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_numbers_csv_example():
    code, out, _ = call("numbers", "--kind", "tangent", "--max-n", "7", "--format", "csv")
    assert code == 0
    assert "7,5,8400" in out.splitlines()


def test_poly_latex_example():
    code, out, _ = call("poly", "--family", "Q", "--n", "6", "--format", "latex")
    assert code == 0
    assert out.strip() == "720 x^6 + 1320 x^4 + 662 x^2 + 61"


def test_derivative_exact_example():
    code, out, _ = call("derivative", "--kind", "cot", "--n", "1", "--exact-u", "1", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["coefficient"] == "-2" and obj["prefactor"] == "1"
    code, out, _ = call("derivative", "--kind", "cot", "--n", "1", "--exact-u", "1")
    assert "coefficient -2, prefactor 1" in out


@pytest.mark.parametrize("family", ["P", "Q", "HyperP", "HyperQ"])
def test_latex_round_trips_through_cli(family):
    from derivpoly.polys import derivative_polynomial_closed

    for n in (0, 3, 9, 14):
        _, out, _ = call("poly", "--family", family, "--n", str(n), "--format", "latex")
        assert parse_latex(out.strip()) == derivative_polynomial_closed(family, n)


@pytest.mark.parametrize(
    "argv, schema",
    [
        (["numbers", "--kind", "secant", "--max-n", "12"], TRIANGLE_SCHEMA),
        (["numbers", "--kind", "stirling", "--max-n", "5"], TRIANGLE_SCHEMA),
        (["poly", "--family", "HyperP", "--n", "7"], POLYNOMIAL_SCHEMA),
        (["poly", "--family", "P", "--range", "0:6", "--method", "recurrence"], POLYNOMIAL_LIST_SCHEMA),
        (["derivative", "--kind", "sech", "--n", "4", "--exact-u", "1/3"], DERIVATIVE_SCHEMA),
        (["derivative", "--kind", "csc", "--n", "4", "--point", "3pi/4"], DERIVATIVE_SCHEMA),
        (["zeta", "--n", "4", "--x", "1/3"], REFLECTION_SCHEMA),
        (["verify", "--suite", "golden", "--suite", "classical", "--max-n", "5"], REPORT_SCHEMA),
    ],
)
def test_json_outputs_validate(argv, schema):
    code, out, _ = call(*argv, "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema)


def test_numeric_derivative_at_pi_multiple():
    code, out, _ = call("derivative", "--kind", "cot", "--n", "2", "--point", "pi/2", "--format", "json")
    assert code == 0
    assert abs(float(json.loads(out)["coefficient"])) < 2.0**-200


def test_precision_from_environment(monkeypatch):
    monkeypatch.setenv(PRECISION_ENV, "96")
    _, out, _ = call("derivative", "--kind", "tan", "--n", "2", "--point", "0.5", "--format", "json")
    assert json.loads(out)["precision"] == 96
    _, out, _ = call("derivative", "--kind", "tan", "--n", "2", "--point", "0.5", "--precision-bits", "128", "--format", "json")
    assert json.loads(out)["precision"] == 128
    monkeypatch.setenv(PRECISION_ENV, "12")
    code, _, err = call("zeta", "--n", "2", "--x", "1/3")
    assert code == 1 and PRECISION_ENV in err


@pytest.mark.parametrize(
    "argv, code",
    [
        ([], 1),
        (["poly", "--family", "R", "--n", "2"], 1),
        (["poly", "--family", "P"], 1),
        (["numbers", "--kind", "tangent", "--max-n", "-3"], 1),
        (["derivative", "--kind", "tan", "--n", "1", "--exact-u", "abc"], 1),
        (["derivative", "--kind", "tan", "--n", "1", "--point", "pi/2"], 2),
        (["derivative", "--kind", "coth", "--n", "1", "--point", "0"], 2),
        (["zeta", "--n", "1", "--x", "1/2"], 2),
        (["zeta", "--n", "3", "--x", "3/2"], 2),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = call(*argv)
    assert got == code
    assert out == ""
    assert err
    if code == 1:
        assert "usage:" in err


def test_internal_failure_exit_code(monkeypatch):
    from derivpoly import calculus
    from derivpoly.errors import NonRealResult

    def broken(*_):
        raise NonRealResult("imaginary part 1")

    monkeypatch.setattr(calculus, "nth_derivative_exact", broken)
    code, _, err = call("derivative", "--kind", "tan", "--n", "1", "--exact-u", "1")
    assert code == 3 and "invariant" in err


def test_verify_failure_exits_3(monkeypatch):
    from derivpoly import verify

    monkeypatch.setitem(verify.SUITES, "golden", lambda max_n: iter([verify.CaseResult("golden", "x", False, "boom")]))
    code, out, _ = call("verify", "--suite", "golden")
    assert code == 3 and "FAIL" in out


def test_verify_output_is_sorted():
    _, out, _ = call("verify", "--suite", "transport", "--suite", "golden", "--max-n", "8", "--format", "json")
    cases = json.loads(out)["cases"]
    keys = [(c["suite"], c["case"]) for c in cases]
    assert keys == sorted(keys)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "derivpoly", "poly", "--family", "HyperQ", "--n", "4", "--format", "latex"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout.strip() == "24 x^4 - 28 x^2 + 5"


def test_verify_all_suites():
    code, out, _ = call("verify", "--suite", "all", "--max-n", "100")
    assert code == 0, out
    suites = {line.split()[1] for line in out.splitlines() if line.startswith(("PASS", "FAIL"))}
    assert {"dual", "symmetry", "transport", "divisibility", "adamchik", "oracle"} <= suites
