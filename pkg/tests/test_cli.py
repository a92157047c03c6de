"""CLI: grid parsing, output formats, environment resolution, exit codes."""

import csv
import json

import pytest

from fermisplit.cli import main, parse_grid


def test_parse_grid_inclusive_endpoints():
    grid = parse_grid("0.1:0.9:9")
    assert len(grid) == 9
    assert grid[0] == pytest.approx(0.1)
    assert grid[-1] == 0.9


def test_parse_grid_single_point():
    assert parse_grid("0.5:0.9:1") == [0.5]


def test_parse_grid_rejects_malformed():
    import argparse

    for bad in ("0.5", "a:b:c", "0:1:0"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_grid(bad)


def test_two_electron_json_output(tmp_path):
    out = tmp_path / "two.json"
    code = main(["two-electron", "--p", "0.5", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["records"]) == 1
    record = data["records"][0]
    assert record["scenario"] == "two-electron"
    assert record["all_passed"] is True
    names = {c["name"] for c in record["checks"]}
    assert "concurrence_projected" in names


def test_certify_csv_grid_output(tmp_path):
    out = tmp_path / "cert.csv"
    code = main([
        "certify", "--p-grid", "0.1:0.9:9", "--format", "csv",
        "--out", str(out),
    ])
    assert code == 0
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert len(rows) == 9
    assert float(rows[0]["fermionic_p_ab"]) == pytest.approx(0.64, abs=1e-9)
    assert all(row["all_passed"] == "1" for row in rows)


def test_n_fermion_exit_codes(tmp_path):
    ok = main(["n-fermion", "--n", "3", "--m", "1",
               "--out", str(tmp_path / "a.json")])
    assert ok == 0
    # closed-form mismatch for the (4, 2) cut surfaces as a failing run
    bad = main(["n-fermion", "--n", "4", "--m", "2",
                "--out", str(tmp_path / "b.json")])
    assert bad == 1


def test_detector_run(tmp_path):
    out = tmp_path / "det.json"
    code = main(["detector", "--p", "0.3", "--detector-levels", "4",
                 "--out", str(out)])
    assert code == 0
    record = json.loads(out.read_text())["records"][0]
    assert record["config"]["levels"] == 4


def test_stdout_when_no_out(capsys):
    code = main(["two-electron", "--p", "0.5"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["records"][0]["scenario"] == "two-electron"


def test_outdir_environment_variable(tmp_path, monkeypatch):
    monkeypatch.setenv("FERMISPLIT_OUTDIR", str(tmp_path))
    code = main(["two-electron", "--p", "0.5", "--out", "sub/run.json"])
    assert code == 0
    assert (tmp_path / "sub" / "run.json").exists()


def test_invalid_config_returns_error_code():
    assert main(["n-fermion", "--n", "3", "--m", "2"]) == 2


def test_tol_override(tmp_path):
    out = tmp_path / "loose.json"
    code = main(["two-electron", "--p", "0.5", "--tol", "1e-6",
                 "--out", str(out)])
    assert code == 0
    record = json.loads(out.read_text())["records"][0]
    tolerances = {c["name"]: c["tolerance"] for c in record["checks"]}
    assert tolerances["concurrence_projected"] == 1e-6
