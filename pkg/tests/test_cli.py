#!/usr/bin/env python3
"""
Test the nbcube command-line interface end to end
"""

import csv
import io
import json

import pytest

from nbcube.constants import TABLE_COLUMNS, WORKERS_ENV_VAR, ExitCode
from nbcube.main import main


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def test_table_csv(capsys):
    """κ_NB grid with every cell matching the closed form"""
    print("Test: table")

    code = main(["table", "--n", "1..3", "--k", "2..4", "--format", "csv"])
    out = capsys.readouterr().out
    assert code == ExitCode.OK
    assert out.splitlines()[0] == ",".join(TABLE_COLUMNS)
    rows = read_csv(out)
    assert len(rows) == 9
    assert all(row["match"] == "true" for row in rows)
    values = {(int(row["n"]), int(row["k"])): int(row["search"]) for row in rows}
    assert values[(1, 2)] == 0 and values[(1, 4)] == 1
    assert values[(3, 2)] == 2 and values[(3, 3)] == 3 and values[(3, 4)] == 3
    first = rows[0]
    assert (first["delta"], first["formula"], first["witness"]) == ("1", "0", "")
    print("  ✓ 9 cells, header and values")


def test_table_json_and_file(tmp_path, monkeypatch):
    """JSON output written to a file with workers from the environment"""
    print("\nTest: table --format json --out")

    monkeypatch.setenv(WORKERS_ENV_VAR, "2")
    target = tmp_path / "table.json"
    code = main(["table", "--n", "2", "--k", "3", "--format", "json", "--out", str(target)])
    assert code == ExitCode.OK
    rows = json.loads(target.read_text(encoding="utf-8"))
    assert rows[0]["search"] == 2 and rows[0]["match"] == "true"
    assert len(rows[0]["witness"].split(";")) == 2
    print("  ✓ one row with a two-vertex witness")


def test_table_budget_exhausted(capsys):
    """Exit code 3 with a marked cell"""
    print("\nTest: table budget")

    code = main(["table", "--n", "1", "--k", "6", "--budget", "1", "--format", "csv"])
    row = read_csv(capsys.readouterr().out)[0]
    assert code == ExitCode.BUDGET_EXHAUSTED
    assert row["search"] == ">1" and row["match"] == "unknown"
    print("  ✓ >1 and unknown")


def test_witness(capsys):
    """Witness for a cube and for an explicit group"""
    print("\nTest: witness")

    code = main(["witness", "--cube", "2,3", "--format", "json", "--exact"])
    row = json.loads(capsys.readouterr().out)
    assert code == ExitCode.OK
    assert row["faults"] == ["11", "22"]
    assert row["ordering"] == ["01", "10", "02", "20"]
    assert row["classification"] == "Complete"
    assert row["passed"] is True
    assert row["exact"] == 2 and row["within_bound"] is True
    print("  ✓ Q_2^3 witness {11, 22}")

    code = main(["witness", "--group", "Z3xZ3", "--gens", "01,02,10,20", "--format", "csv"])
    row = read_csv(capsys.readouterr().out)[0]
    assert code == ExitCode.OK
    assert row["faults"] == "11;22" and row["passed"] == "true"
    print("  ✓ same witness from --group")


@pytest.mark.parametrize(
    "argv",
    [
        ["witness", "--group", "Z6", "--gens", "1,5"],
        ["witness", "--group", "Z4", "--gens", "1,2"],
        ["witness", "--group", "Z3xZ3"],
        ["witness"],
        ["paths", "--cube", "4,2", "--faults", "0,15", "--x", "3", "--y", "5"],
        ["paths", "--cube", "3", "--x", "0", "--y", "1"],
        ["table", "--n", "1", "--k", "3", "--workers", "0"],
        ["table", "--n", "3..1", "--k", "3"],
    ],
)
def test_usage_errors(argv, capsys):
    """Invalid input exits with code 2"""
    assert main(argv) == ExitCode.USAGE_ERROR
    assert "nbcube:" in capsys.readouterr().err


def test_parser_errors():
    with pytest.raises(SystemExit) as info:
        main(["paths", "--cube", "3,3"])
    assert info.value.code == 2


def test_paths_and_verify(tmp_path, capsys):
    """Build a certificate, verify it, then tamper with it"""
    print("\nTest: paths and verify")

    target = tmp_path / "cert.json"
    code = main(["paths", "--cube", "3,3", "--faults", "0", "--x", "13", "--y", "26", "--out", str(target)])
    assert code == ExitCode.OK
    assert main(["verify", str(target)]) == ExitCode.OK
    assert capsys.readouterr().out.startswith("PASS")
    print("  ✓ built certificate verifies")

    data = json.loads(target.read_text(encoding="utf-8"))
    data["paths"][0][1] = 1
    data["digits"]["paths"][0][1] = "001"
    target.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", str(target)]) == ExitCode.VERIFICATION_FAILED
    assert "FAIL UnhealthyVertex" in capsys.readouterr().out
    print("  ✓ consistent tampering is reported by code")

    data["paths"][0][1] = 2
    target.write_text(json.dumps(data), encoding="utf-8")
    assert main(["verify", str(target)]) == ExitCode.VERIFICATION_FAILED
    assert "FAIL MalformedCertificate" in capsys.readouterr().out
    print("  ✓ ids disagreeing with digits are malformed")


def test_paths_to_stdout(capsys):
    code = main(["paths", "--cube", "4,2", "--faults", "0", "--x", "15", "--y", "7"])
    data = json.loads(capsys.readouterr().out)
    assert code == ExitCode.OK
    assert data["bound"] == 2 and len(data["paths"]) >= 2


def test_check_lemmas(capsys):
    """Structural checks on Q_3^3 and Q_2^5"""
    print("\nTest: check-lemmas")

    assert main(["check-lemmas", "--cube", "3,3", "--lmax", "1", "--format", "csv"]) == ExitCode.OK
    rows = read_csv(capsys.readouterr().out)
    assert [row["check"] for row in rows] == ["(0,2)-property", "subcube partition", "counting"]
    assert all(row["passed"] == "true" for row in rows)

    assert main(["check-lemmas", "--cube", "2,5", "--format", "csv"]) == ExitCode.OK
    rows = read_csv(capsys.readouterr().out)
    assert len(rows) == 2
    print("  ✓ all checks pass, counting skipped for n = 2")


def main_runner():
    """Run CLI tests outside pytest"""
    print("=" * 60)
    print("Command-Line Tests")
    print("=" * 60)
    print()
    print("These tests rely on pytest fixtures; run: pytest tests/test_cli.py")
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main_runner())
