"""Command-line behaviour, exercised in-process through ``main(argv)``."""

import json
import subprocess
import sys

import pytest

from dspd.cli import main

BIN = ["--graph", "binomial", "--n", "400", "--p", "0.01"]


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_no_command_prints_usage(capsys):
    code, _, err = run_cli([], capsys)
    assert code == 2
    assert "usage" in err


def test_list_presets(capsys):
    code, out, _ = run_cli(["--list-presets"], capsys)
    assert code == 0
    names = out.strip().splitlines()
    assert len(names) == 72
    assert "bin 20000 rand 200" in names
    assert all(len(name.split()) == 4 for name in names)


def test_estimate_explicit_graph(capsys):
    code, out, _ = run_cli(
        ["estimate", *BIN, "--method", "random", "--s", "20", "--seed", "1"],
        capsys)
    assert code == 0
    report = json.loads(out)
    assert report["config"]["graph"] == {
        "family": "binomial", "n": 400, "p": 0.01}
    assert report["config"]["sample"]["size"] == 20
    assert report["survival"][0] == pytest.approx(1.0)
    assert sum(report["pmf"]) + report["residual"] == pytest.approx(1.0)
    assert report["mean_distance"] > 0.0


def test_estimate_requires_complete_graph(capsys):
    code, _, err = run_cli(
        ["estimate", "--graph", "binomial", "--n", "400",
         "--method", "random", "--s", "20"], capsys)
    assert code == 2
    assert "--p" in err
    code, _, err = run_cli(
        ["estimate", *BIN, "--s", "20"], capsys)
    assert code == 2
    assert "method" in err


def test_estimate_unknown_preset(capsys):
    code, _, err = run_cli(
        ["estimate", "--preset", "bin 20000 rand 999"], capsys)
    assert code == 2
    assert "error" in err


def test_estimate_deterministic_bytes(capsys):
    argv = ["estimate", "--preset", "pow_b 20000 rand 200", "--seed", "9"]
    code, first, _ = run_cli(argv, capsys)
    assert code == 0
    code, second, _ = run_cli(argv, capsys)
    assert first == second


def test_estimate_writes_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["estimate", *BIN, "--method", "snowball", "--retention", "0.4",
         "--s", "10", "--out", str(out_path)], capsys)
    assert code == 0
    assert out == ""
    report = json.loads(out_path.read_text())
    assert report["config"]["sample"]["retention"] == 0.4
    assert report["config"]["output"]["path"] == str(out_path)


def test_estimate_csv(capsys):
    code, out, _ = run_cli(
        ["estimate", *BIN, "--method", "random", "--s", "20",
         "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "distance,probability"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[0]) for r in rows] == list(range(len(rows)))
    assert sum(float(r[1]) for r in rows) <= 1.0 + 1e-9


def test_config_file_with_flag_overrides(tmp_path, capsys):
    config = {
        "graph": {"family": "binomial", "n": 400, "p": 0.01},
        "sample": {"method": "random", "size": 30},
        "estimator": {"l_max": 32},
        "seed": 4,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    code, out, _ = run_cli(
        ["estimate", "--config", str(path), "--s", "25"], capsys)
    assert code == 0
    report = json.loads(out)
    # the legacy depth alias resolves, and explicit flags win over the file
    assert report["config"]["estimator"]["max_depth"] == 32
    assert report["config"]["sample"]["size"] == 25
    assert report["config"]["seed"] == 4


def test_config_file_invalid(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(["estimate", "--config", str(path)], capsys)
    assert code == 2
    assert "error" in err
    path.write_text(json.dumps({"graph": {"family": "binomial", "n": 10}}))
    code, _, err = run_cli(["estimate", "--config", str(path)], capsys)
    assert code == 2


def test_empirical_deterministic(capsys):
    argv = ["empirical", *BIN, "--method", "random", "--s", "20",
            "--graphs", "2", "--samples-per-graph", "2", "--seed", "11"]
    code, first, _ = run_cli(argv, capsys)
    assert code == 0
    report = json.loads(first)
    assert len(report["per_trial"]) == 4
    assert report["w1"]["mean"] >= 0.0
    assert {t["graph_index"] for t in report["per_trial"]} == {0, 1}
    code, second, _ = run_cli(argv, capsys)
    assert first == second


def test_compare_reports_verdict(capsys):
    argv = ["compare", *BIN, "--s", "20"]
    code, out, _ = run_cli(argv, capsys)
    assert code == 0
    report = json.loads(out)
    verdict = report["verdict"]
    assert verdict["smaller_method"] in ("random", "snowball")
    assert verdict["difference"] == pytest.approx(
        verdict["mean_random"] - verdict["mean_snowball"])
    # swapping the a/b labels must not change the verdict
    code, swapped, _ = run_cli(
        ["compare", *BIN, "--s", "20",
         "--method-a", "snowball", "--method-b", "random"], capsys)
    assert json.loads(swapped)["verdict"] == verdict


def test_compare_rejects_identical_methods(capsys):
    code, _, err = run_cli(
        ["compare", *BIN, "--s", "20",
         "--method-a", "random", "--method-b", "random"], capsys)
    assert code == 2
    assert "different" in err


def test_compare_validate_runs_protocol(capsys):
    code, out, _ = run_cli(
        ["compare", *BIN, "--s", "20", "--validate",
         "--graphs", "2", "--samples-per-graph", "2", "--seed", "3"], capsys)
    assert code == 0
    report = json.loads(out)
    assert isinstance(report["agreement"], bool)
    assert report["empirical_verdict"]["smaller_method"] in (
        "random", "snowball")


def test_compare_csv_rejected(capsys):
    code, _, err = run_cli(
        ["compare", *BIN, "--s", "20", "--format", "csv"], capsys)
    assert code == 2
    assert "csv" in err


def test_bench_reports_backend_and_timing(capsys):
    code, out, _ = run_cli(
        ["bench", *BIN, "--method", "random", "--s", "20",
         "--repetitions", "3"], capsys)
    assert code == 0
    report = json.loads(out)
    timing = report["timing"]
    assert timing["backend"] in ("compiled", "python")
    assert timing["repetitions"] == 3
    assert timing["estimate"]["mean"] > 0.0
    assert timing["empirical"]["mean"] > 0.0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "dspd", "--list-presets"],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert len(out.stdout.strip().splitlines()) == 72
