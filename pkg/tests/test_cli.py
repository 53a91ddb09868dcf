from __future__ import annotations

import json
import shutil
import subprocess
import sys

import pytest

from hhcert.cli import main, run_suite
from hhcert.datafiles import load_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fast_suite_passes(capsys):
    code, out, _ = run_cli(capsys, "run", "spectrum")
    assert code == 0
    assert "refuted 0" in out and "undetermined 0" in out


def test_json_report_is_byte_identical(capsys):
    first = run_cli(capsys, "run", "spectrum", "--format", "json")[1]
    second = run_cli(capsys, "run", "spectrum", "--format", "json")[1]
    assert first == second
    report = json.loads(first)
    assert set(report) == {"suite", "version", "config", "datasets", "summary", "items", "notes"}
    assert [it["id"] for it in report["items"]] == sorted(it["id"] for it in report["items"])


def test_timing_is_opt_in(capsys):
    report = json.loads(run_cli(capsys, "run", "spectrum", "--format", "json", "--timing")[1])
    assert "timing_seconds" in report


def test_refuted_items_give_exit_one(capsys):
    code, out, _ = run_cli(capsys, "run", "su3-tables")
    assert code == 1
    assert "su3/table1/phi2" in out and "witness:" in out
    assert "note: " in out


def test_bad_input_gives_exit_two(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["run", "no-such-suite"])
    assert exc.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "run", "spectrum", "--config", str(bad))
    assert code == 2 and "not valid JSON" in err
    code, _, err = run_cli(capsys, "run", "spectrum", "--config", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, err = run_cli(capsys, "verify-ledger", "--case", "e8/x")
    assert code == 2
    code, _, err = run_cli(capsys, "verify-ledger")
    assert code == 2


def test_missing_data_dir_gives_exit_two(capsys, tmp_path):
    code, _, err = run_cli(capsys, "run", "g2r-table", "--data-dir", str(tmp_path))
    assert code == 2 and err.startswith("hhcert: error:")


def test_environment_override(capsys, monkeypatch):
    monkeypatch.setenv("HHCERT_SEED", "7")
    monkeypatch.setenv("HHCERT_FORMAT", "json")
    report = json.loads(run_cli(capsys, "run", "spectrum")[1])
    assert report["config"]["seed"] == 7
    # an explicit flag wins over the environment
    report = json.loads(run_cli(capsys, "run", "spectrum", "--seed", "9")[1])
    assert report["config"]["seed"] == 9


def test_config_file_options(capsys, tmp_path):
    cfg = tmp_path / "jordan.json"
    cfg.write_text(json.dumps({"jordan": {"n_max": 12, "orders": [4, 8], "endgame_q": [3]}}))
    code, out, _ = run_cli(capsys, "run", "jordan", "--config", str(cfg), "--format", "json")
    report = json.loads(out)
    assert code == 0
    ids = [it["id"] for it in report["items"]]
    assert ids == ["jordan/formula-vs-brute/order=04", "jordan/formula-vs-brute/order=08",
                   "jordan/monotone-in-d/order=04", "jordan/monotone-in-d/order=08",
                   "jordan/pr5-endgame/q=3"]
    assert report["config"]["options"]["jordan"]["n_max"] == 12


def test_verify_ledger_single_case(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run_cli(capsys, "verify-ledger", "--case", "d4/ell=3|q+1", "--format", "json",
                         "--out", str(out_file))
    report = json.loads(out_file.read_text())
    assert code == 0
    assert report["items"] and all(it["id"].startswith("d4/ell=3|q+1/") for it in report["items"])
    code, _, err = run_cli(capsys, "verify-ledger", "--case", "d4/no-such-case")
    assert code == 2 and "no items" in err


def test_su3_tables_matrix(capsys):
    code, out, _ = run_cli(capsys, "su3-tables")
    assert code == 1
    lines = {ln.split()[0]: ln for ln in out.splitlines()}
    assert "mult_u=FAIL" in lines["table1/phi2"]
    assert "f1=FAIL" in lines["table2/phi4*"]
    assert lines["table2/phi7"].split()[1:] == ["not", "compared"]
    assert lines["table1/phi5"].split()[1] == "verified"


def test_jordan_table(capsys):
    code, out, _ = run_cli(capsys, "jordan-table", "--n-max", "12", "--orders", "4,8", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows and all(r["equal"] for r in rows)
    assert {r["order"] for r in rows} == {4, 8}


def test_library_entry_point():
    report = run_suite("spectrum")
    assert report["summary"]["refuted"] == 0
    assert report["datasets"] == {}
    g2r = run_suite("g2r-table")
    assert g2r["datasets"] and g2r["summary"]["verified"] == len(g2r["items"])


def test_jobs_do_not_change_the_report(capsys, tmp_path):
    cfg = tmp_path / "quick.json"
    cfg.write_text(json.dumps({"jordan": {"n_max": 10, "orders": [4], "endgame_q": [3]},
                               "oracle": {"zgm_limit": 1000}}))
    args = ["run", "all", "--format", "json", "--config", str(cfg)]
    one = run_cli(capsys, *args, "--jobs", "1")[1]
    many = run_cli(capsys, *args, "--jobs", "3")[1]
    assert one == many


def test_console_script_installed():
    exe = shutil.which("hhcert")
    cmd = [exe] if exe else [sys.executable, "-m", "hhcert.cli"]
    res = subprocess.run(cmd + ["--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("hhcert ")


def test_bundled_datasets_load():
    for name in ("su3_table1", "su3_table2"):
        assert load_json(name)
