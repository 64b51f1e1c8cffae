import json
import subprocess
import sys

import pytest

from icnof.cli import main

PARAMS = {
    "snr1": 100.0,
    "snr2": 10.0,
    "inr12": 20.0,
    "inr21": 30.0,
    "snr_fb1": 1.0,
    "snr_fb2": 1.0,
}


@pytest.fixture
def params_file(tmp_path):
    path = tmp_path / "params.json"
    path.write_text(json.dumps(PARAMS))
    return str(path)


def run_cli(args):
    return main(args)


def test_classify_prints_pair(params_file, capsys):
    code = run_cli(["classify", "--params", params_file])
    assert code == 0
    assert capsys.readouterr().out.strip() == "(S1, S4)"


def test_classify_symmetric_flags(capsys):
    code = run_cli(["classify", "--snr-db", "20", "--alpha", "0.5", "--beta", "1.0"])
    assert code == 0
    out = capsys.readouterr().out.strip()
    assert out.startswith("(S") and out.endswith(")")


def test_invalid_inputs_exit_2(tmp_path, capsys):
    assert run_cli(["classify", "--snr-db", "20", "--alpha", "0.5"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"snr1": 1.0}))
    assert run_cli(["classify", "--params", str(bad)]) == 2
    weak = tmp_path / "weak.json"
    weak.write_text(json.dumps(dict(PARAMS, inr12=0.5)))
    assert run_cli(["classify", "--params", str(weak)]) == 2
    assert run_cli(["classify", "--snr-db", "20", "--alpha", "-1.0", "--beta", "1.0"]) == 2


def test_no_partial_output_on_invalid_input(tmp_path):
    out = tmp_path / "front.csv"
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    code = run_cli(["region", "achievable", "--params", str(bad), "-o", str(out)])
    assert code == 2
    assert not out.exists()


def test_region_achievable_csv_and_json(params_file, tmp_path):
    out = tmp_path / "front.csv"
    bjson = tmp_path / "bounds.json"
    code = run_cli(
        [
            "region",
            "achievable",
            "--params",
            params_file,
            "--rho-steps",
            "3",
            "--mu-steps",
            "3",
            "--frontier-samples",
            "32",
            "-o",
            str(out),
            "--bounds-json",
            str(bjson),
        ]
    )
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "r1,r2"
    assert len(lines) > 10
    r1, r2 = map(float, lines[1].split(","))
    assert r1 == 0.0 and r2 > 0.0
    bounds = json.loads(bjson.read_text())
    assert len(bounds) == 27
    assert set(bounds[0]) == {"c_r1", "c_r2", "c_sum", "c_2r1_r2", "c_r1_2r2"}


def test_region_converse_csv(params_file, tmp_path):
    out = tmp_path / "front.csv"
    code = run_cli(
        [
            "region",
            "converse",
            "--params",
            params_file,
            "--conv-rho-steps",
            "17",
            "--frontier-samples",
            "32",
            "-o",
            str(out),
        ]
    )
    assert code == 0
    assert out.read_text().startswith("r1,r2\n")


def test_region_single_scheme_grid_matches_bounds(params_file, tmp_path, capsys):
    # a 2x2x2 grid at rho_max 0 would collapse; instead check the CSV frontier
    # of a tiny grid stays inside the one computed from the full default grid
    out_small = tmp_path / "small.csv"
    run_cli(
        ["region", "achievable", "--params", params_file, "--rho-steps", "2",
         "--mu-steps", "2", "--frontier-samples", "16", "-o", str(out_small)]
    )
    text = out_small.read_text()
    assert text.count("\n") >= 16


def test_gap_ledger_and_numeric(params_file, tmp_path):
    led_path = tmp_path / "ledger.json"
    code = run_cli(["gap", "ledger", "--params", params_file, "-o", str(led_path)])
    assert code == 0
    led = json.loads(led_path.read_text())
    assert set(led) >= {"case", "scheme", "d_r1", "d_r2", "d_2r", "d_3r1", "d_3r2", "delta"}
    num_path = tmp_path / "numeric.json"
    code = run_cli(
        [
            "gap",
            "numeric",
            "--params",
            params_file,
            "--rho-steps",
            "5",
            "--mu-steps",
            "5",
            "--conv-rho-steps",
            "17",
            "--frontier-samples",
            "64",
            "-o",
            str(num_path),
        ]
    )
    assert code == 0
    num = json.loads(num_path.read_text())
    assert num["xi"] >= 0.0
    assert led["delta"] >= num["xi"] - 0.05


def test_verify_theorem3_smoke(tmp_path):
    report_path = tmp_path / "report.json"
    code = run_cli(
        [
            "verify",
            "theorem3",
            "--samples",
            "3",
            "--seed",
            "42",
            "--snr-range",
            "10:40",
            "--threads",
            "1",
            "--rho-steps",
            "9",
            "--mu-steps",
            "9",
            "--conv-rho-steps",
            "33",
            "--frontier-samples",
            "128",
            "-o",
            str(report_path),
        ]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["samples"] == 3
    assert report["max_xi"] <= 4.45
    assert report["violations"] == []


def test_verify_exit_code_on_failure(tmp_path, capsys):
    # absurd slack forces a failure: gap limit 0
    report_path = tmp_path / "report.json"
    code = run_cli(
        [
            "verify",
            "theorem3",
            "--samples",
            "2",
            "--seed",
            "1",
            "--slack",
            "-4.4",
            "--threads",
            "1",
            "--rho-steps",
            "5",
            "--mu-steps",
            "5",
            "--conv-rho-steps",
            "17",
            "--frontier-samples",
            "64",
            "-o",
            str(report_path),
        ]
    )
    assert code == 1
    report = json.loads(report_path.read_text())
    assert report["violations"]


def test_sweep_csv_deterministic(tmp_path):
    out1 = tmp_path / "s1.csv"
    out2 = tmp_path / "s2.csv"
    args = [
        "sweep",
        "--snr-db",
        "20",
        "--alpha",
        "0.5:1.0:0.5",
        "--beta",
        "0.5:1.5:1.0",
        "--threads",
        "2",
        "--rho-steps",
        "5",
        "--mu-steps",
        "5",
        "--conv-rho-steps",
        "17",
        "--frontier-samples",
        "64",
    ]
    assert run_cli(args + ["-o", str(out1)]) == 0
    assert run_cli(args + ["-o", str(out2)]) == 0
    text = out1.read_text()
    assert text == out2.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == "alpha,beta,xi_bits"
    assert len(lines) == 5  # 2 alphas x 2 betas + header


def test_fm_check_smoke(tmp_path):
    report_path = tmp_path / "fm.json"
    code = run_cli(
        [
            "fm-check",
            "--samples",
            "2",
            "--adversarial",
            "1",
            "--seed",
            "7",
            "--resolution",
            "16",
            "--rate-grid",
            "16",
            "-o",
            str(report_path),
        ]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["theta_vectors"] == 3
    assert report["checked"] == 3 * 16 * 16
    assert report["violations"] == []


def test_console_script_installed():
    proc = subprocess.run(
        [sys.executable, "-m", "icnof.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "classify" in proc.stdout


def test_env_threads_fallback(tmp_path, monkeypatch):
    monkeypatch.setenv("ICNOF_THREADS", "not-a-number")
    code = run_cli(
        ["verify", "theorem3", "--samples", "1", "--seed", "1", "--rho-steps", "5",
         "--mu-steps", "5", "--conv-rho-steps", "17", "--frontier-samples", "64",
         "-o", str(tmp_path / "r.json")]
    )
    assert code == 2
    monkeypatch.setenv("ICNOF_THREADS", "1")
    code = run_cli(
        ["verify", "theorem3", "--samples", "1", "--seed", "1", "--rho-steps", "5",
         "--mu-steps", "5", "--conv-rho-steps", "17", "--frontier-samples", "64",
         "-o", str(tmp_path / "r.json")]
    )
    assert code == 0
