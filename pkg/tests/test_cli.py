import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kzmono.cli import main
from kzmono.connection import GradedMatrix, n_matrix


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_integer(capsys):
    code, out, _ = run(["classify", "--k", "2"], capsys)
    assert code == 0
    assert "Allowed" in out and "integer weight (Kaneko–Koike/Guerzhoy)" in out


def test_classify_json_has_witness(capsys):
    code, out, _ = run(["classify", "--k", "13/6", "--N", "1", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "Excluded"
    assert data["witness"]["level"] == 36 and data["witness"]["commutator_nonzero"]


def test_verify_relations(capsys):
    code, out, _ = run(["verify", "relations", "--k", "7/5"], capsys)
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--k", "0.5"],
        ["classify", "--k", "1/0"],
        ["classify"],
        ["frobnicate"],
        ["matrix", "--k", "12", "--t", "2"],
        ["matrix", "--k", "5", "--t", "2"],
        ["matrix", "--k", "1"],
        ["matrix", "--k", "1", "--r", "2"],
        ["commute", "--k", "1", "--r", "2"],
        ["witness", "--k", "2"],
        ["verify", "relations"],
        ["verify", "rseqpm12", "--range", "5..3"],
        ["verify", "rseqpm12", "--range", "1..4"],
        ["qcheck", "--k", "1", "--order", "0"],
        ["classify", "--k", "1/3", "--N", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert "usage" in err


def test_verification_failure_exit_1(capsys):
    # the listed conditions miss N(0,0) = E, so the literal oracle sweep fails
    code, out, _ = run(["commute", "--k", "7/5", "--r", "0", "--s", "0", "--u", "2", "--v", "3"], capsys)
    assert code == 1 and "DISAGREES" in out
    code, _, _ = run(["commute", "--k", "7/5", "--r", "0", "--s", "0", "--u", "2", "--v", "3", "--complete"], capsys)
    assert code == 0
    code, _, _ = run(["verify", "oracle", "--k", "7/5", "--range", "-2..2"], capsys)
    assert code == 1
    code, _, _ = run(["verify", "oracle", "--k", "7/5", "--range", "-2..2", "--complete"], capsys)
    assert code == 0


def test_matrix_json_round_trip(capsys):
    code, out, _ = run(["matrix", "--k", "13/6", "--r", "5", "--s", "22", "--json"], capsys)
    assert code == 0
    assert GradedMatrix.from_json(json.loads(out)) == n_matrix("13/6", 5, 22)
    code, out, _ = run(["matrix", "--k", "13/6", "--word", "(T^5 S T^22 S)^2", "--json"], capsys)
    assert GradedMatrix.from_json(json.loads(out)) == n_matrix("13/6", 5, 22)


def test_text_mode_condition_labels(capsys):
    code, out, _ = run(["commute", "--k", "7/5", "--r", "2", "--s", "3", "--u", "2", "--v", "3"], capsys)
    assert code == 0 and "condition (2)" in out
    code, out, _ = run(["commute", "--k", "1/2", "--t", "2", "--r", "0", "--s", "3"], capsys)
    assert code == 0 and "MN" in out


def test_qcheck_json(capsys):
    code, out, _ = run(["qcheck", "--k", "1/2", "--order", "10", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["passed"]
    for row in data["identities"]:
        assert list(row) == ["identity", "k", "order", "max_nonzero_coefficient"]
        assert row["max_nonzero_coefficient"] == "0"


def test_fast_suites(capsys):
    for suite in ("lemmas", "rseqpm12"):
        code, out, _ = run(["verify", suite, "--fast"], capsys)
        assert code == 0, out


REQUESTS = [
    ["classify", "--k", "2/5", "--json"],
    ["witness", "--k", "1/3", "--N", "2", "--json"],
    ["matrix", "--k", "7/5", "--gen", "S", "--json"],
    ["commute", "--k", "13/6", "--t", "3", "--r", "2", "--s", "3", "--json"],
    ["verify", "lemmas", "--fast", "--json"],
    ["qcheck", "--k", "0", "--order", "8", "--json"],
]


@pytest.mark.parametrize("argv", REQUESTS)
def test_byte_identical_json(argv, capsys):
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second and first.endswith("\n")
    json.loads(first)


weights = st.sampled_from(["1", "2", "1/2", "7/5", "13/6", "1/3", "12", "5", "0.5", "x", "-3/8"])
ints = st.sampled_from(["-3", "0", "1", "2", "5", "abc"])


@st.composite
def requests(draw):
    verb = draw(st.sampled_from(["classify", "matrix", "commute", "witness", "qcheck", "bogus"]))
    argv = [verb, "--k", draw(weights)]
    for flag in ("--t", "--r", "--s", "--u", "--v", "--N"):
        if draw(st.booleans()):
            argv += [flag, draw(ints)]
    if draw(st.booleans()):
        argv.append("--json")
    return argv


@given(requests())
def test_exit_code_contract(argv):
    import contextlib
    import io

    buf_out, buf_err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(buf_out), contextlib.redirect_stderr(buf_err):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    assert code in (0, 1, 2)
    if code == 2:
        assert "usage" in buf_err.getvalue()
    else:
        assert buf_out.getvalue()
    if code == 0 and "--json" in argv:
        json.loads(buf_out.getvalue())


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kzmono", "classify", "--k", "7/5"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "Allowed" in proc.stdout


def test_negative_values(capsys):
    code, out, _ = run(["classify", "--k", "-6/5"], capsys)
    assert code == 0 and "Excluded" in out
    code, out, _ = run(["matrix", "--k", "-3/8", "--r", "-2", "--s", "-4", "--json"], capsys)
    assert code == 0 and json.loads(out)["k"] == "-3/8"
