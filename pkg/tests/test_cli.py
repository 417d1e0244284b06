import json

import pytest

from suspzeta.cli import run
from suspzeta.models import CheckResult


def output(capsys) -> str:
    return capsys.readouterr().out.strip()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["top", "--resolution", "fermat_q5.json"], "(2 - 3*s)/((5*s + 2)*(s + 1))"),
        (["top", "--fixture", "z2_minus_x2"], "1/((s + 1)^2)"),
        (["twisted", "--fixture", "x5_plus_y6", "--twist", "2"], "4/(30*s + 11)"),
        (
            ["suspend-f", "--bundle", "x5y6.json", "--Q", "10"],
            "(3*s + 7)/((15*s + 7)*(s + 1))",
        ),
        (
            ["suspend-f", "--fixture", "x5y6", "--Q", "10", "--twist", "15"],
            "7/(2*(15*s + 7))",
        ),
        (
            ["suspend-f", "--bundle", "lvp.json", "--Q", "84", "--twist", "27"],
            "8/(756*s + 317)",
        ),
        (
            ["suspend-f", "--fixture", "x5y6", "--Q", "10", "--latex"],
            r"\frac{3s + 7}{(15s + 7)(s + 1)}",
        ),
        (
            ["suspend-g", "--fixture", "x5y6", "--Q", "10"],
            "(3*s + 7)/((15*s + 7)*(s + 1))",
        ),
    ],
)
def test_single_value_commands(capsys, argv, expected):
    assert run(argv) == 0
    assert output(capsys) == expected


def test_stratum_command(capsys):
    assert run(["stratum", "--N", "2", "--nu", "1", "--Q", "2"]) == 0
    assert output(capsys).splitlines() == [
        "sigma+: 1/(2*(s + 1))",
        "sigma-: 1/(2*(s + 1))",
        "rho: -1/(s + 1)",
        "rho*: 1/((s + 1)^2)",
        "total: 1/((s + 1)^2)",
    ]


def test_twisted_stratum_command(capsys):
    assert run(["twisted", "--N", "2", "--nu", "1", "--Q", "2", "--twist", "2"]) == 0
    lines = output(capsys).splitlines()
    assert lines[-2:] == ["rho*: 0", "total: 0"]


def test_motivic_stratum_command(capsys):
    argv = ["motivic-stratum", "--N", "2", "--nu", "1", "--Q", "2"]
    assert run([*argv, "--series-bound", "2", "--l-bound", "2"]) == 0
    text = output(capsys)
    assert "rho*:" in text
    assert "T^2:" in text
    assert run(argv) == 0
    assert "(L - 1)" in output(capsys)


def test_suspend_g_pole_candidates(capsys):
    assert run(["suspend-g", "--fixture", "x5y6", "--Q", "10", "--d", "2"]) == 0
    lines = output(capsys).splitlines()
    assert lines[0] == "(3*s + 7)/((15*s + 7)*(s + 1))"
    assert lines[-1] == "pole candidates: -13/10, -1, -2/3, -3/10"


def test_matrix_command(capsys):
    assert run(["matrix", "--fixture", "x5y6", "--Q", "10"]) == 0
    lines = output(capsys).splitlines()
    assert lines[0] == "divisors: 1, 2, 5, 10"
    assert lines[1].split() == ["9", "-3", "-24", "-72"]
    assert lines[-1] == "identity holds: true"


def test_compare_legacy_command(capsys):
    assert run(["compare-legacy", "--fixture", "fermat_q4", "--Q", "4"]) == 0
    lines = output(capsys).splitlines()
    assert lines[2] == "difference: s/((4*s + 3)*(s + 1))"
    assert lines[3] == "fermat discrepancy: s/((4*s + 3)*(s + 1))"


@pytest.mark.parametrize(
    "argv",
    [
        ["suspend-f", "--fixture", "x5y6"],
        ["suspend-f", "--fixture", "x5y6", "--Q", "0"],
        ["stratum", "--N", "2", "--Q", "2"],
        ["stratum", "--N", "2,x", "--nu", "1", "--Q", "2"],
        ["top"],
        ["bogus"],
        [],
    ],
)
def test_usage_errors(argv):
    assert run(argv) == 2


def test_help_exits_cleanly():
    assert run(["--help"]) == 0


def test_missing_untwisted_entry(capsys):
    assert run(["suspend-f", "--fixture", "lvp", "--Q", "10"]) == 1
    assert "twist order 1" in capsys.readouterr().err


def test_malformed_input_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert run(["top", "--resolution", str(path)]) == 1
    assert "line 1, column 2" in capsys.readouterr().err


def test_json_envelope(capsys):
    assert run(["top", "--fixture", "fermat_q3", "--json"]) == 0
    assert json.loads(output(capsys)) == {
        "result": "(2 - s)/((3*s + 2)*(s + 1))",
        "warnings": [],
    }


def test_json_envelope_collects_warnings(tmp_path, capsys):
    path = tmp_path / "smooth.json"
    path.write_text(json.dumps({"entries": [{"twist": 1, "num": "1", "den": "s + 1"}]}))
    assert run(["suspend-f", "--bundle", str(path), "--Q", "2", "--json"]) == 0
    assert json.loads(output(capsys)) == {
        "result": "1/(s + 1)",
        "warnings": ["bundle has no entry for twist 2, using zero"],
    }


def test_json_envelope_on_error(capsys):
    assert run(["suspend-f", "--fixture", "lvp", "--Q", "10", "--json"]) == 1
    envelope = json.loads(output(capsys))
    assert envelope["error"] == "bundle has no entry for twist order 1"


def test_verify_exit_status_follows_the_checks(monkeypatch, capsys):
    async def fake_checks(checks=None):
        return [
            CheckResult(name="fine", passed=True, detail="ok"),
            CheckResult(name="broken", passed=False, detail="mismatch"),
        ]

    monkeypatch.setattr("suspzeta.cli.run_checks", fake_checks)
    assert run(["verify"]) == 1
    table = output(capsys)
    assert "PASS" in table
    assert "FAIL" in table
