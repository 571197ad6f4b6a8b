import json
import subprocess
import sys

import pytest

from conftest import comb0
from qlogconvex.cli import RunConfig, ConfigError, parse_config, run_checks, run_cli
from qlogconvex.report import Report, Section, strip_timestamps, write_report


def sun_entries(n_max):
    return {(n, k): comb0(n, k) * comb0(2 * n - 2 * k, n - k) for n in range(n_max + 1) for k in range(n + 1)}


def run_json(tmp_path, argv, name="r.json"):
    out = tmp_path / name
    code = run_cli([*argv, "--out", str(out)])
    return code, json.loads(out.read_text(encoding="utf-8")), out


# -- report --------------------------------------------------------------------


def test_report_numbers_are_strings_and_keys_ordered():
    rep = Report(config={"n_max": 3})
    rep.add(Section("x", True, counts={"points": 10**30}, witness=None))
    d = rep.finish().to_dict()
    assert list(d) == ["tool", "version", "config", "started", "finished", "overall", "sections"]
    assert d["config"]["n_max"] == "3"
    assert d["sections"][0]["counts"]["points"] == "1" + "0" * 30
    assert list(d["sections"][0]) == ["check", "status", "counts", "witness"]
    with pytest.raises(TypeError):
        Report(config={"bad": 0.5}).to_dict()


def test_report_round_trip_is_byte_identical(tmp_path):
    _, _, out = run_json(tmp_path, ["check-c2", "--max-n", "6"])
    text = out.read_text(encoding="utf-8")
    assert Report.loads(text).dumps() == text


def test_write_report_missing_directory(tmp_path):
    with pytest.raises(FileNotFoundError):
        write_report(Report(config={}), tmp_path / "nope" / "r.json")


# -- CLI exit codes ------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["verify-sun", "--max-n", "10"],
    ["check-c1", "--max-n", "10"],
    ["check-c2", "--max-n", "8"],
    ["check-c2", "--max-n", "8", "--criterion", "1.1", "--triangle", "binomial"],
    ["identities", "--max-n", "6", "--sign-max-n", "10", "--bridge-max-n", "6"],
    ["qlc", "--max-n", "10"],
    ["seq", "--max-n", "4"],
])
def test_commands_pass(argv, capsys):
    assert run_cli(argv) == 0
    assert capsys.readouterr().out.rstrip().endswith("overall: pass")


@pytest.mark.parametrize("argv", [
    ["qlc", "--triangle", "ones", "--weights", "ones", "--max-n", "5"],
    ["check-c1", "--weights", "ones", "--max-n", "5"],
    ["qlc", "--concave", "--max-n", "5"],
])
def test_commands_fail(argv, capsys):
    assert run_cli(argv) == 1
    assert "overall: fail" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["qlc", "--bogus"],
    ["qlc", "--max-n", "zero"],
    ["qlc", "--max-n", "0"],
    ["qlc", "--weights", "nope"],
    ["qlc", "--triangle", "no_such_triangle_or_file"],
    ["check-c2", "--criterion", "9.9"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run_cli(argv) == 2


def test_unwritable_out_exits_2(tmp_path, capsys):
    assert run_cli(["qlc", "--max-n", "3", "--out", str(tmp_path / "missing" / "r.json")]) == 2
    assert "cannot write report" in capsys.readouterr().err


def test_bad_csv_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("0,0,1\n1,zero,1\n")
    assert run_cli(["qlc", "--triangle", str(path), "--max-n", "1"]) == 2
    assert "row 2" in capsys.readouterr().err


def test_short_csv_exits_2(csv_writer, capsys):
    path = csv_writer(sun_entries(4))
    assert run_cli(["check-c2", "--triangle", path, "--max-n", "4"]) == 2
    assert run_cli(["check-c2", "--triangle", path, "--max-n", "3"]) == 0


def test_version_flag(capsys):
    assert run_cli(["--version"]) == 0


# -- CLI content ---------------------------------------------------------------


def test_verify_sun_report(tmp_path):
    code, d, _ = run_json(tmp_path, ["verify-sun", "--max-n", "100"])
    assert code == 0 and d["overall"] == "pass"
    golden = d["sections"][0]
    assert golden["check"] == "golden_table_L_t_a_n_0"
    assert golden["details"]["values"]["L_0(a(1,0))"] == "4"
    assert golden["details"]["values"]["L_4(a(4,0))"] == "60"
    assert d["config"] == {"command": "verify-sun", "triangle": "sun_a", "weights": "central_binomial",
                           "n_max": "100"}


def test_doctored_csv_reports_witness(csv_writer, tmp_path):
    entries = sun_entries(3)
    entries[(1, 1)] = 100
    code, d, _ = run_json(tmp_path, ["qlc", "--triangle", csv_writer(entries), "--max-n", "2"])
    assert code == 1 and d["overall"] == "fail"
    w = d["sections"][0]["witness"]
    assert (w["n"], w["t"]) == ("1", "1") and int(w["coefficient"]) < 0

    entries = sun_entries(4)
    entries[(2, 1)] = 100
    code, d, _ = run_json(tmp_path, ["qlc", "--triangle", csv_writer(entries), "--max-n", "3"], "r2.json")
    assert code == 1 and d["sections"][0]["witness"]["n"] == "2"


def test_check_c2_violation_witness(csv_writer, tmp_path):
    entries = sun_entries(8)
    entries[(5, 1)] = 1
    code, d, _ = run_json(tmp_path, ["check-c2", "--triangle", csv_writer(entries), "--max-n", "6"])
    assert code == 1
    failing = [s for s in d["sections"] if s["status"] == "fail"]
    assert failing and failing[0]["witness"] is not None


def test_seq_prints_and_writes_csv(tmp_path, capsys):
    csv_path = tmp_path / "tri.csv"
    assert run_cli(["seq", "--max-n", "3", "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "g_2 = " in out
    rows = csv_path.read_text().splitlines()
    assert rows[0] == "n,k,value" and len(rows) == 1 + 10
    assert run_cli(["seq", "--triangle", str(csv_path), "--max-n", "3"]) == 0


def test_identities_config_echo():
    cfg = parse_config(["identities", "--max-n", "5", "--sign-max-n", "8"])
    assert cfg.echo()["sign_max_n"] == 8 and "parallel" not in cfg.echo()
    with pytest.raises(ConfigError):
        run_checks(RunConfig(command="identities", n_max=5, sign_max_n=3))


# -- determinism ---------------------------------------------------------------


def test_rerun_is_identical_modulo_timestamps(tmp_path):
    _, a, _ = run_json(tmp_path, ["check-c2", "--max-n", "10"], "a.json")
    _, b, _ = run_json(tmp_path, ["check-c2", "--max-n", "10"], "b.json")
    assert strip_timestamps(a) == strip_timestamps(b)


def test_parallel_equals_sequential(tmp_path, monkeypatch):
    monkeypatch.setenv("QLOGCONVEX_JOBS", "2")
    argv = ["identities", "--max-n", "8", "--sign-max-n", "10", "--bridge-max-n", "6"]
    _, a, _ = run_json(tmp_path, argv, "seq.json")
    _, b, _ = run_json(tmp_path, [*argv, "--parallel"], "par.json")
    assert strip_timestamps(a) == strip_timestamps(b)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qlogconvex", "qlc", "--max-n", "4"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0 and "overall: pass" in proc.stdout
