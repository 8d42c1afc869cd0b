import json
from fractions import Fraction
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qozeta.branch import derive_invariants, random_branch
from qozeta.cli import (
    EXIT_INPUT,
    EXIT_OK,
    EXIT_VERIFY,
    InputDocument,
    InputError,
    compute_report,
    decode_report,
    encode_input,
    main,
    parse_input,
    render,
)
from qozeta.spectrum import spectrum_prime
from qozeta.ztop import z_top

EXAMPLE = '{"d":2,"lambda":[["1/2","3/2"],["1/2","7/4"]]}'
CUSP = '{"d":1,"lambda":[["3/2"]]}'
SMOOTH = '{"d":1,"lambda":[["1/2"]]}'


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_example():
    doc = parse_input(EXAMPLE)
    assert doc.branch.d == 2 and doc.branch.g == 2
    assert parse_input(CUSP).branch.lam == ((Fraction(3, 2),),)


@pytest.mark.parametrize(
    "text,where,what",
    [
        ('{"d":2,"lambda":[["1/2","3/2"],["1/2"]]}', "$.lambda[1]", "ragged"),
        ('{"d":1,"lambda":[["0.5"]]}', "$.lambda[0][0]", "malformed rational"),
        ('{"d":1,"lambda":[[0.5]]}', "$.lambda[0][0]", "rational"),
        ('{"d":3,"lambda":[["1/2","1/3"]]}', "$.d", "d mismatch"),
        ('{"d":1,\n "lambda":[["1/2"]', "line 2", ""),
        ('{"lambda":[["1/2"]]}', "$", "missing"),
    ],
)
def test_parse_errors(text, where, what):
    with pytest.raises(InputError) as info:
        parse_input(text)
    assert info.value.position.startswith(where)
    assert what in str(info.value)


def test_parse_options():
    doc = parse_input('{"d":1,"lambda":[["3/2"]],"compat_printed_csigma":true,"verify":{"series_order":5,"chitop_points":[4]}}')
    assert doc.compat == "printed"
    assert doc.options.series_order == 5 and doc.options.chitop_points == (4,)


def test_json_report_contents():
    report = compute_report(parse_input(CUSP))
    assert report["spectrum_prime"] == [["5/6", 1], ["7/6", 1]]
    assert report["ztop"]["numerator"] == ["5", "4"]
    assert report["ztop"]["denominator"] == [["1", "1"], ["5", "6"]]
    assert report["invariants"]["n"] == ["2"] and report["invariants"]["r"] == ["3"]
    assert report["poles"]["cp"] == [["6", "5"], ["1", "1"]]


def test_report_field_order_is_stable():
    a = render(compute_report(parse_input(EXAMPLE)), "json")
    b = render(compute_report(parse_input(EXAMPLE)), "json")
    assert a == b
    assert list(json.loads(a)) == ["input", "compat_printed_csigma", "invariants", "fan", "ztop", "spectrum_prime", "spectrum", "milnor", "poles"]


@settings(max_examples=15)
@given(st.integers(0, 5000))
def test_json_roundtrip(seed):
    doc = InputDocument(random_branch(seed))
    text = render(compute_report(doc), "json")
    again = parse_input(text)
    assert again.branch == doc.branch
    assert render(compute_report(again), "json") == text
    objs = decode_report(json.loads(text))
    inv = derive_invariants(doc.branch)
    assert objs["ztop"] == z_top(inv)
    assert objs["spectrum_prime"] == spectrum_prime(inv)


def test_text_smooth(capsys, monkeypatch):
    code, out, _ = run(capsys, ["compute", "--input", "-"], SMOOTH, monkeypatch)
    assert code == EXIT_OK
    assert "Z_top = 1/(1+s)" in out


def test_latex_example(capsys, monkeypatch):
    code, out, _ = run(capsys, ["compute", "--input", "-", "--format", "latex"], EXAMPLE, monkeypatch)
    assert code == EXIT_OK
    for factor in ("(3+8s)", "(5+24s)", "(11+52s)", "(1+s)"):
        assert factor in out


def test_compute_from_file(tmp_path, capsys):
    path = tmp_path / "cusp.json"
    path.write_text(CUSP, encoding="utf-8")
    code, out, _ = run(capsys, ["compute", "--input", str(path), "--format", "json"])
    assert code == EXIT_OK and json.loads(out)["spectrum_prime"] == [["5/6", 1], ["7/6", 1]]


@pytest.mark.parametrize(
    "text",
    [
        '{"d":2,"lambda":[["1/2","3/2"],["1/2"]]}',
        '{"d":2,"lambda":[["1/2","3/2"],["1/2","3/2"]]}',
        '{"d":2,"lambda":[["1","1"],["1/2","2"]]}',
        "not json",
    ],
)
def test_invalid_input_exit_code(capsys, monkeypatch, text):
    code, out, err = run(capsys, ["compute", "--input", "-"], text, monkeypatch)
    assert code == EXIT_INPUT
    assert err.startswith("error:") and out == ""


def test_missing_file(capsys):
    code, _, err = run(capsys, ["compute", "--input", "/nonexistent/x.json"])
    assert code == EXIT_INPUT and "error" in err


def test_verify_cusp(capsys, monkeypatch):
    code, out, _ = run(capsys, ["verify", "--input", "-", "--series-order", "20", "--l-precision", "20"], CUSP, monkeypatch)
    assert code == EXIT_OK
    assert "1/1 branches passed" in out


def test_verify_printed_orientation_fails(capsys, monkeypatch):
    code, out, _ = run(capsys, ["verify", "--input", "-", "--compat-printed-csigma"], EXAMPLE, monkeypatch)
    assert code == EXIT_VERIFY
    assert "FAIL fixture: example spectrum" in out
    assert "minimized counterexample" in out


def test_verify_random_small(capsys):
    code, out, _ = run(capsys, ["verify", "--count", "3", "--seed", "40", "--series-order", "8", "--l-precision", "8", "--chitop-points", "1,2"])
    assert code == EXIT_OK and "3/3 branches passed" in out


def test_verify_bad_points(capsys, monkeypatch):
    code, _, _ = run(capsys, ["verify", "--input", "-", "--chitop-points", "a,b"], CUSP, monkeypatch)
    assert code == EXIT_INPUT


def test_random_and_example(capsys):
    code, out, _ = run(capsys, ["random", "--seed", "3", "--count", "2"])
    lines = out.strip().splitlines()
    assert code == EXIT_OK and len(lines) == 2
    assert all(parse_input(line) for line in lines)
    assert json.loads(lines[0]) == encode_input(random_branch(3))
    code, out, _ = run(capsys, ["example", "torus-knot", "3", "4"])
    assert json.loads(out) == {"d": 1, "lambda": [["4/3"]]}
    code, out, _ = run(capsys, ["example", "paper-example"])
    assert parse_input(out).branch == parse_input(EXAMPLE).branch
    code, _, _ = run(capsys, ["example", "torus-knot", "2", "4"])
    assert code == EXIT_INPUT


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qozeta", "example", "cusp"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout) == {"d": 1, "lambda": [["3/2"]]}
