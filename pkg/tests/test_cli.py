"""Command-line interface: exit codes, report schema, determinism."""

import copy
import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest

from semicrossed.cli import EXIT_CAP, EXIT_CONFIG, EXIT_NO_CONVERGENCE, EXIT_OK, main


CONFIGS = Path(__file__).resolve().parent.parent / "configs"
GM = str(CONFIGS / "golden-mean.json")
FULL2 = str(CONFIGS / "full-2.json")

SCHEMA_KEYS = {"command", "inputs", "results", "diagnostics", "version"}


def run(args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        rc = main(args)
    return rc, out.getvalue(), err.getvalue()


def run_json(args):
    rc, out, err = run(args)
    return rc, json.loads(out), err


# ---------------------------------------------------------------------------
# happy paths


def test_validate_reports_normalized_config():
    rc, rep, _ = run_json(["validate", "--config", GM, "--no-timestamp"])
    assert rc == EXIT_OK
    assert set(rep) == SCHEMA_KEYS
    assert rep["command"] == "validate"
    cfg = rep["results"]["config"]
    assert cfg["name"] == "golden-mean"
    assert set(cfg["elements"]) == {"U", "onePlusU", "fU", "mixed"}


def test_validate_timestamp_toggle():
    _, with_ts, _ = run_json(["validate", "--config", GM])
    _, without, _ = run_json(["validate", "--config", GM, "--no-timestamp"])
    assert "timestamp" in with_ts and "timestamp" not in without


def test_analyze_table_agrees():
    rc, rep, _ = run_json(["analyze", "--config", GM, "--no-timestamp"])
    assert rc == EXIT_OK
    assert rep["results"]["all_agree"] is True
    props = [row["property"] for row in rep["results"]["transfer"]]
    assert props == ["transitive", "periodic_dense", "minimal", "recurrent_dense"]


def test_extend_lists_fibers_and_cycles():
    rc, rep, _ = run_json(["extend", "--config", GM, "--no-timestamp"])
    assert rc == EXIT_OK
    res = rep["results"]
    assert [0, 1] in res["cycles"]
    fib = res["fibers"]["cycleStart"]
    assert fib["classification"]["periodic"] is True
    assert len(fib["backward_coordinates"]) == 4
    # consecutive backward coordinates differ by one application of the shift
    first, second = fib["backward_coordinates"][0], fib["backward_coordinates"][1]
    assert second[1:] == first[: len(first) - 1]


def test_norm_reports_history_and_converges(tmp_path):
    out_file = tmp_path / "norm.json"
    rc, out, _ = run(
        ["norm", "onePlusU", "--config", GM, "--no-timestamp", "--out", str(out_file)]
    )
    assert rc == EXIT_OK
    assert out == ""  # --out redirects the report
    rep = json.loads(out_file.read_text())
    est = rep["results"]["estimate"]
    assert est["converged"] is True
    assert est["value"] == pytest.approx(2.0, abs=1e-6)
    ks = [k for k, _ in est["detail"]["K_history"]]
    assert ks == sorted(ks)


def test_crossed_norm_command():
    rc, rep, _ = run_json(
        ["crossed-norm", "onePlusU", "--config", FULL2, "--no-timestamp", "--k-max", "64"]
    )
    assert rc == EXIT_OK
    assert rep["results"]["estimate"]["value"] == pytest.approx(2.0, abs=1e-6)


def test_verify_command_runs_all_checks():
    rc, rep, _ = run_json(
        ["verify", "--config", GM, "--no-timestamp", "--lambda-grid", "64", "--k-max", "64"]
    )
    assert rc == EXIT_OK
    res = rep["results"]
    assert res["ok"] is True
    assert res["covariance"]["exact"] == res["covariance"]["triples"] == 25
    assert res["norm_lemmas"]
    for block in res["norm_lemmas"].values():
        assert block["ok"] is True
        assert all(row["ok"] for row in block["cycle_rows"] + block["ray_rows"])
    assert res["nest"]  # one record per configured point
    for record in res["nest"].values():
        if record["separated"]:
            assert record["indicators_exact"] and record["tails_invariant"]
        else:
            assert "reason" in record


def test_envelope_command_and_csv(tmp_path):
    csv_file = tmp_path / "sweep.csv"
    rc, rep, _ = run_json(
        ["envelope", "--config", FULL2, "--no-timestamp", "--csv", str(csv_file), "--k-max", "64"]
    )
    assert rc == EXIT_OK
    res = rep["results"]
    assert res["implication_ok"] is True
    lines = csv_file.read_text().strip().splitlines()
    assert lines[0] == "element,semicrossed,crossed,gap"
    assert len(lines) == len(res["embedding_sweep"]) + 1


def test_envelope_output_is_deterministic():
    args = ["envelope", "--config", GM, "--no-timestamp", "--k-max", "64"]
    _, first, _ = run(args)
    _, second, _ = run(args)
    assert first == second


# ---------------------------------------------------------------------------
# failure paths


def test_unknown_element_is_a_config_error():
    rc, _, err = run(["norm", "nosuch", "--config", GM, "--no-timestamp"])
    assert rc == EXIT_CONFIG
    assert "nosuch" in err


def test_malformed_config_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "x", "graph": {"alphabet": 2}}))
    rc, _, err = run(["validate", "--config", str(bad), "--no-timestamp"])
    assert rc == EXIT_CONFIG
    assert "alphabet_size" in err


def test_missing_config_file():
    rc, _, err = run(["validate", "--config", "/nonexistent/nope.json"])
    assert rc == EXIT_CONFIG


def test_word_cap_exhaustion(tmp_path):
    cfg = json.loads(Path(FULL2).read_text())
    cfg = copy.deepcopy(cfg)
    cfg["policy"]["word_cap"] = 100
    cfg["policy"]["mode"] = "exhaustive"
    small = tmp_path / "capped.json"
    small.write_text(json.dumps(cfg))
    rc, _, err = run(["norm", "mixed", "--config", str(small), "--no-timestamp"])
    assert rc == EXIT_CAP
    assert "cap" in err


def test_no_convergence_still_writes_report(tmp_path):
    out_file = tmp_path / "partial.json"
    rc, out, err = run(
        [
            "norm",
            "mixed",
            "--config",
            GM,
            "--no-timestamp",
            "--k-max",
            "8",
            "--out",
            str(out_file),
        ]
    )
    assert rc == EXIT_NO_CONVERGENCE
    rep = json.loads(out_file.read_text())
    assert rep["results"]["estimate"]["converged"] is False


def test_version_flag():
    with pytest.raises(SystemExit) as exc:
        run(["--version"])
    assert exc.value.code == 0
