import json
import subprocess
import sys

import pytest

from ckmech.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_SINGULAR, main


def run(*args):
    return main(list(args))


def test_verify_single_cell(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run("verify", "--space", "ads", "--potential", "gkc1", "--points", "30",
               "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["schema_version"] == 1
    assert report["passed"] is True
    assert report["config"]["space"] == "ads"
    cell = report["cells"][0]
    assert cell["potential"] == "gkc1"
    assert any(c["name"].startswith("involution {L1") for c in cell["checks"])
    assert "PASS" in capsys.readouterr().out


def test_verify_all_spaces_sw(tmp_path):
    out = tmp_path / "r.json"
    assert run("verify", "--space", "all", "--potential", "sw", "--points", "15",
               "--out", str(out)) == EXIT_OK
    assert len(json.loads(out.read_text())["cells"]) == 6


def test_verify_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        run("verify", "--space", "m", "--potential", "kc", "--points", "10", "--seed", "4",
            "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


def test_verify_failure_exit_code():
    # A bracket tolerance of 1e-30 is below floating-point resolution.
    assert run("verify", "--space", "s3", "--potential", "family", "--points", "5",
               "--tol-bracket", "1e-30") == EXIT_FAIL


@pytest.mark.parametrize("argv", [
    ["verify", "--space", "e3", "--kappa1", "1"],
    ["verify", "--kappa1", "1"],
    ["verify", "--kappa1", "1", "--kappa2", "0"],
    ["verify", "--space", "x"],
    ["verify", "--space", "s3", "--potential", "yukawa"],
    ["verify", "--space", "s3", "--points", "0"],
    ["curvature"],
    ["simulate", "--space", "all"],
])
def test_config_errors(argv):
    assert main(argv) == EXIT_CONFIG


def test_curvature_command(tmp_path, capsys):
    out = tmp_path / "c.json"
    assert run("curvature", "--space", "h3", "--points", "2", "--out", str(out)) == EXIT_OK
    report = json.loads(out.read_text())
    assert all(row["scalar"] == pytest.approx(-6.0) for row in report["points"])
    assert run("curvature", "--kappa1", "0.25", "--kappa2", "1", "--points", "1") == EXIT_OK
    assert "K=+1.5" in capsys.readouterr().out
    assert run("curvature", "--space", "e3", "--points", "1", "--out", str(out)) == EXIT_OK
    row = json.loads(out.read_text())["points"][0]
    assert row["scalar"] == 0.0 and set(row["sectional"].values()) == {0.0}


def test_simulate_kc_circular(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code = run("simulate", "--space", "e3", "--potential", "kc", "--k", "1",
               "--init", "1,1.5707963267948966,0,0,0,1", "--out", str(out))
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "drift L3" in text
    assert out.read_text().startswith("t,r,theta,phi,p_r,p_theta,p_phi,H")


def test_simulate_sw_sphere(tmp_path):
    out = tmp_path / "t.csv"
    assert run("simulate", "--space", "s3", "--potential", "sw", "--t-end", "2",
               "--out", str(out)) == EXIT_OK


def test_simulate_singular_start(tmp_path, capsys):
    code = run("simulate", "--space", "s3", "--potential", "sw",
               "--init", "0.8,0.5,0,0.1,0.1,0.1", "--out", str(tmp_path / "t.csv"))
    assert code == EXIT_CONFIG
    assert "initial point singular" in capsys.readouterr().err


def test_simulate_runtime_singularity(tmp_path):
    out = tmp_path / "t.csv"
    assert run("simulate", "--space", "m", "--potential", "sw", "--out", str(out)) == EXIT_SINGULAR
    assert out.exists()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ckmech", "curvature", "--space", "s3",
                           "--points", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "6*kappa1 = 6" in proc.stdout
